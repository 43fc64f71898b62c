"""Exception types shared across the solver modules."""


class SpinchainError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(SpinchainError):
    """Invalid run configuration (bad key, bad value, malformed file).

    ``line`` is the 1-based line number in the config file when the error
    came from parsing text, else None.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NoConvergence(SpinchainError):
    """Steady-state iteration exhausted max_iter without meeting tol."""

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"steady-state solve did not converge after {iterations} iterations "
            f"(residual {residual:.3e})"
        )


class DegenerateCavity(SpinchainError):
    """Driven resonator with zero net photon leakage has no steady state."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(
            f"resonator {index + 1} is driven but has zero net leakage rate; "
            "a lossless driven cavity has no steady state"
        )


class SingularSystem(SpinchainError):
    """Fluctuation linear system is singular at an isolated detuning."""

    def __init__(self, eta: float):
        self.eta = eta
        super().__init__(f"fluctuation system singular at eta = {eta!r} rad/s")


class ZeroBaseline(SpinchainError):
    """Ratio metric requested against a vanishing non-spinning baseline."""

    def __init__(self, baseline: float):
        self.baseline = baseline
        super().__init__(f"non-spinning baseline too small for a ratio: {baseline!r}")


class SweepError(SpinchainError):
    """Error raised at a specific grid index during a sweep."""

    def __init__(self, index: int, cause: SpinchainError):
        self.index = index
        self.cause = cause
        super().__init__(f"sweep failed at grid index {index}: {cause}")
