from builtins import Exception

from specsetlab.utils.logger import get_logger


class SpecSetException(Exception):
    def __init__(self, message):
        self.message = message
        self.logger = get_logger(__name__, loglevel="error")
        self.logger.error(self.message)

    def __str__(self):
        return self.message


class FileNotFound(SpecSetException):
    def __init__(self, file):
        self.message = f"File not found: {file}"
        super().__init__(self.message)


class InvalidValue(SpecSetException):
    def __init__(self, key, value, message=""):
        self.message = f"Invalid value {key}: {value} {message}".rstrip()
        super().__init__(self.message)


# instance I/O


class InstanceSchemaError(SpecSetException):
    def __init__(self, message):
        self.message = f"Instance schema error: {message}"
        super().__init__(self.message)


class MissingRequiredFieldError(InstanceSchemaError):
    def __init__(self, field_name, parent=None):
        location = f" in {parent}" if parent else ""
        self.field_name = field_name
        super().__init__(f"Missing required field '{field_name}'{location}")


class InvalidFieldValueError(InstanceSchemaError):
    def __init__(self, field_name, value, reason=""):
        self.field_name = field_name
        super().__init__(f"Invalid value for '{field_name}': {value!r} {reason}".rstrip())


class InstanceHypothesisError(SpecSetException):
    def __init__(self, reason):
        self.reason = reason
        self.message = f"Instance violates hypotheses: {reason}"
        super().__init__(self.message)


# geometry


class DegenerateGeometryError(SpecSetException):
    def __init__(self, message):
        self.message = message
        super().__init__(self.message)


class InvalidDiskError(DegenerateGeometryError):
    def __init__(self, field_name, value):
        super().__init__(f"Invalid generalized disk, {field_name} = {value}")


class DegenerateMoebiusError(DegenerateGeometryError):
    def __init__(self, det):
        super().__init__(f"Degenerate Moebius coefficients, ad - bc = {det}")


class DegenerateCirclineError(DegenerateGeometryError):
    def __init__(self, det):
        super().__init__(f"Coefficients do not describe a circline, discriminant {det}")


class IdenticalBoundariesError(DegenerateGeometryError):
    def __init__(self):
        super().__init__("Disks share the same boundary circline")


class NestedDisksError(DegenerateGeometryError):
    def __init__(self, inner, outer):
        super().__init__(f"Nested disks: disk {inner} is contained in disk {outer}")


class DuplicateDiskError(DegenerateGeometryError):
    def __init__(self, j, k):
        super().__init__(f"Duplicate disks {j} and {k}")


class EmptyInteriorError(DegenerateGeometryError):
    def __init__(self, message="intersection of the disks has empty interior"):
        super().__init__(f"Empty interior: {message}")


class PointOutsideDiskError(DegenerateGeometryError):
    def __init__(self, z, where="disk"):
        super().__init__(f"Point {z} is outside the {where}")


class PointAtInfinityError(DegenerateGeometryError):
    def __init__(self, operation):
        super().__init__(f"{operation} is not defined at infinity, use a Moebius chart first")


class NotOnBoundaryError(DegenerateGeometryError):
    def __init__(self, z, distance):
        super().__init__(f"Point {z} is not on the boundary (distance {distance:.3e})")


# operators


class MatrixShapeError(SpecSetException):
    def __init__(self, shape, reason="expected a finite square matrix"):
        self.message = f"Invalid matrix of shape {shape}: {reason}"
        super().__init__(self.message)


class ResolventAtSpectrumError(SpecSetException):
    def __init__(self, sigma):
        self.message = f"resolvent at spectrum: sigma = {sigma}"
        super().__init__(self.message)


class SingularDenominatorError(SpecSetException):
    def __init__(self):
        self.message = "denominator q(A) is singular, a pole of f lies on the spectrum"
        super().__init__(self.message)


class InvalidRationalFunctionError(SpecSetException):
    def __init__(self, reason):
        self.message = f"Invalid rational function: {reason}"
        super().__init__(self.message)


class SpectrumNotInteriorError(SpecSetException):
    def __init__(self, eigenvalue, margin):
        self.message = f"spectrum not interior: eigenvalue {eigenvalue} has margin {margin:.3e}"
        super().__init__(self.message)


class PoleOnDomainError(SpecSetException):
    def __init__(self, pole):
        self.message = f"pole on X: {pole}"
        super().__init__(self.message)


class UnboundedOnDomainError(SpecSetException):
    def __init__(self):
        self.message = "f is unbounded on X (numerator degree exceeds denominator degree and infinity lies in X)"
        super().__init__(self.message)


class ExteriorRadiusUnderflowError(SpecSetException):
    def __init__(self, radius, epsilon):
        self.message = f"exterior radius underflow: r = {radius} cannot shrink by {epsilon}"
        super().__init__(self.message)


# quadrature


class QuadratureConvergenceError(SpecSetException):
    def __init__(self, panels, error, tol):
        self.message = (
            f"Quadrature did not converge after {panels} panels "
            f"(error estimate {error:.3e} > tol {tol:.3e}), near-pole geometry?"
        )
        super().__init__(self.message)


class PoleOnPathError(SpecSetException):
    def __init__(self, pole):
        self.message = f"pole on integration path: {pole}"
        super().__init__(self.message)


# bounds


class InvalidRadiusError(SpecSetException):
    def __init__(self, R, minimum=1.0, strict=True):
        relation = ">" if strict else ">="
        self.message = f"Invalid radius ratio R = {R}, expected R {relation} {minimum}"
        super().__init__(self.message)


class InvalidAngleError(SpecSetException):
    def __init__(self, theta, interval):
        self.message = f"Invalid angle theta = {theta}, expected theta in {interval}"
        super().__init__(self.message)


class NoCrossoverError(SpecSetException):
    def __init__(self, bracket):
        self.message = f"No sign change of f - g on bracket {bracket}"
        super().__init__(self.message)
