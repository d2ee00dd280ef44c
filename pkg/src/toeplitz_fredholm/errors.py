"""Exception types raised across the package."""


class ToeplitzError(Exception):
    """Base class for all package errors."""

    #: short machine-readable tag used in JSON diagnostics
    kind = "error"

    def to_dict(self):
        return {"error": self.kind, "message": str(self)}


class ZeroSymbolError(ToeplitzError, ValueError):
    kind = "zero_symbol"


class NotFredholmError(ToeplitzError):
    kind = "not_fredholm"

    def __init__(self, message, witness_theta=None, min_modulus=None):
        super().__init__(message)
        self.witness_theta = witness_theta
        self.min_modulus = min_modulus

    def to_dict(self):
        d = super().to_dict()
        d["witness_theta"] = self.witness_theta
        d["min_modulus"] = self.min_modulus
        return d


class GridTooCoarseError(ToeplitzError):
    kind = "grid_too_coarse"


class WrongRegimeError(ToeplitzError, ValueError):
    kind = "wrong_regime"


class InconclusiveError(ToeplitzError):
    kind = "inconclusive"


class DegenerateFermiError(ToeplitzError):
    kind = "degenerate_fermi"


class OriginOnSiteError(ToeplitzError, ValueError):
    kind = "origin_on_site"
