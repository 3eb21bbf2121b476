"""Exception hierarchy shared by every module of the package."""


class GeneoError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInput(GeneoError, ValueError):
    def __init__(self, length):
        self.length = length
        super().__init__(f"a circular function needs at least 3 samples, got {length}")


class NonFiniteValue(GeneoError, ValueError):
    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"non-finite value {value!r} at index {index}")


class SizeMismatch(GeneoError, ValueError):
    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(f"sample counts differ: {left} != {right}")


class InvalidLevelPair(GeneoError, ValueError):
    def __init__(self, u, v):
        self.u = u
        self.v = v
        super().__init__(f"persistent Betti numbers need u <= v, got u={u}, v={v}")


class EssentialMismatch(GeneoError, ValueError):
    def __init__(self, degree, left, right):
        self.degree = degree
        super().__init__(
            f"essential classes in degree {degree} differ in multiplicity: {left} vs {right}"
        )


class TooLarge(GeneoError, ValueError):
    def __init__(self, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(f"brute-force matching supports at most {cap} finite points, got {count}")


class ConstraintViolation(GeneoError, ValueError):
    """An operator descriptor breaks a construction constraint (e.g. weight bounds)."""

    def __init__(self, message, op_index=None):
        self.op_index = op_index
        if op_index is not None:
            message = f"operator {op_index}: {message}"
        super().__init__(message)


class ParseError(GeneoError, ValueError):
    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class IoError(GeneoError, OSError):
    pass


class InvalidParameter(GeneoError, ValueError):
    pass
