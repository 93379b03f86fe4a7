"""Exception types raised across the package."""


class OrientationError(ValueError):
    """Base class for all errors raised by orientrep."""


class InvalidInputError(OrientationError):
    pass


class InvalidLocationError(OrientationError):
    """Object location unusable for the alpha/rotation_y conversion (z <= 0)."""


class InvalidSchemeError(OrientationError):
    pass


class DegenerateError(OrientationError):
    """Numerically degenerate state (zero-length vector, antipodal mean)."""


class DegenerateMeanError(DegenerateError):
    pass


class DegenerateVectorError(DegenerateError):
    pass


class KittiParseError(OrientationError):
    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
