"""Error hierarchy. Every error maps onto a CLI exit code."""

from __future__ import annotations


class ArtifactError(Exception):
    """Base class; `exit_code` is what the CLI returns for it."""

    exit_code = 2


class ZeroPolynomial(ArtifactError):
    pass


class PolySyntaxError(ArtifactError):
    exit_code = 1

    def __init__(self, position: int, message: str):
        super().__init__(f"at position {position}: {message}")
        self.position = position
        self.message = message


class UnknownVariable(ArtifactError):
    exit_code = 1


class NotHomogeneous(ArtifactError):
    pass


class ConeInput(ArtifactError):
    pass


class NonRationalEigenvalues(ArtifactError):
    pass


class NotSemisimple(ArtifactError):
    pass


class NotInSpace(ArtifactError):
    pass


class NotDegreeD(ArtifactError):
    pass


class NotStandardForm(ArtifactError):
    pass


class HyperplaneArrangement(ArtifactError):
    pass


class InvalidGraph(ArtifactError):
    pass


class UnsupportedCase(ArtifactError):
    pass


class Unsupported(ArtifactError):
    pass


class NotAllowed(ArtifactError):
    pass


class NonIsolated(ArtifactError):
    pass


class NotWeightedHomogeneous(ArtifactError):
    pass


class BadParameters(ArtifactError):
    exit_code = 1


class DegenerateCone(ArtifactError):
    pass


class InternalInconsistency(ArtifactError):
    """A hard invariant failed; this is a bug or a wrong input contract."""

    exit_code = 3
