"""Exception hierarchy shared by every kmlab package."""

from typing import Any, Optional, Sequence, Tuple


class KMLabError(Exception):
    """Base class for all kmlab errors."""


class NotGCM(KMLabError):
    """Raised when a matrix violates the generalized Cartan matrix axioms."""

    def __init__(self, reason: str, coords: Optional[Tuple[int, int]] = None) -> None:
        self.reason = reason
        self.coords = coords
        where = f" at {coords}" if coords is not None else ""
        super().__init__(f"Not a generalized Cartan matrix{where}: {reason}")


class NotSymmetrizable(KMLabError):
    """Raised by operations that need the invariant bilinear form."""

    def __init__(self, name: str = "") -> None:
        super().__init__(f"GCM {name or '(unnamed)'} is not symmetrizable")


class NotDominant(KMLabError):
    """Raised when a weight has a negative pairing with some simple coroot."""

    def __init__(self, weight: Sequence[int]) -> None:
        self.weight = tuple(weight)
        super().__init__(f"Weight {self.weight} is not dominant")


class EmptyWithinBound(KMLabError):
    """Raised when a bounded search over the Weyl group finds nothing."""

    def __init__(self, bound: int) -> None:
        self.bound = bound
        super().__init__(f"No upper bound found among elements of length <= {bound}")


class DepthTooSmall(KMLabError):
    """Raised when an extremal weight lies outside the depth window."""

    def __init__(self, depth: int, required: int) -> None:
        self.depth = depth
        self.required = required
        super().__init__(f"Depth bound {depth} is below the required depth {required}")


class AmbientMismatch(KMLabError):
    """Raised when two objects live in different ambient modules or windows."""


class WindowTooSmall(KMLabError):
    """Raised when a truncation window cannot support the requested check."""


class UnstableLattice(KMLabError):
    """Raised when the integral lattice does not survive reduction mod p."""

    def __init__(self, window: Any, detail: str = "") -> None:
        self.window = window
        super().__init__(f"Lattice unstable on window {window}: {detail}")


class IntegralityError(KMLabError):
    """Raised when a vector expected in the integral lattice has a denominator."""


class NotConverged(KMLabError):
    """Raised when Demazure sweeps fail to stabilize within the sweep cap."""

    def __init__(self, sweeps: int) -> None:
        self.sweeps = sweeps
        super().__init__(f"Character did not stabilize after {sweeps} sweeps")


class UnknownPreset(KMLabError):
    """Raised when a preset name is absent from the catalog."""

    def __init__(self, name: str, available: Sequence[str] = ()) -> None:
        self.name = name
        super().__init__(
            f"Unknown preset: {name}. Available presets: {', '.join(available)}"
        )
