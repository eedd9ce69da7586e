# euler_engine/errors.py
"""
Exception hierarchy shared by the library, the CLI and the HTTP routes.

InvalidInputError subclasses signal a violated precondition (exit code 2).
VerificationError subclasses signal a failed tolerance or certificate check (exit code 3).
"""


class EulerEngineError(Exception):
    exit_code = 1


class InvalidInputError(EulerEngineError):
    exit_code = 2


class VerificationError(EulerEngineError):
    exit_code = 3


# moebius
class NonPositiveDeterminant(InvalidInputError):
    pass


class NotElliptic(InvalidInputError):
    pass


class NotBoundaryFixing(InvalidInputError):
    pass


class IdentityInput(InvalidInputError):
    pass


class InvalidAngle(InvalidInputError):
    pass


class BoundaryCenter(InvalidInputError):
    pass


# lift
class NoBoundaryFixedPoint(InvalidInputError):
    pass


class NotHyperbolicCommutator(InvalidInputError):
    pass


class RelationViolated(VerificationError):
    pass


class RoundingAmbiguous(VerificationError):
    pass


class SignAmbiguous(VerificationError):
    pass


class DefectOutOfRange(VerificationError):
    pass


# signature / homology
class InvalidSignature(InvalidInputError):
    pass


class NotCocompact(InvalidInputError):
    pass


# realize
class NotHyperbolicTriple(InvalidInputError):
    pass


class SolverNoConvergence(VerificationError):
    pass


# construct
class NotHyperbolic(InvalidInputError):
    pass


class EulerOutOfRange(InvalidInputError):
    pass


class IdentityB1(InvalidInputError):
    pass


class NotInE(InvalidInputError):
    pass


class FirstCommutatorNotHyperbolic(VerificationError):
    pass


class NoRationalInRange(VerificationError):
    pass


# discreteness
class InvalidDepth(InvalidInputError):
    pass
