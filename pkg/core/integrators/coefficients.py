"""
Fourth-order symplectic composition coefficients
"""
from dataclasses import dataclass
from typing import Tuple

CUBE_ROOT_TWO = 2.0 ** (1.0 / 3.0)


@dataclass(frozen=True)
class SymplecticCoefficients:
    """Drift weights c and kick weights d of a four-stage composition"""
    c: Tuple[float, float, float, float]
    d: Tuple[float, float, float, float]
    beta: float = CUBE_ROOT_TWO

    @property
    def kicks(self) -> int:
        """Number of non-zero kicks, i.e. force evaluations per step"""
        return sum(1 for d in self.d if d != 0.0)


def fr_coefficients() -> SymplecticCoefficients:
    beta = CUBE_ROOT_TWO
    outer = 1.0 / (2.0 * (2.0 - beta))
    inner = (1.0 - beta) / (2.0 * (2.0 - beta))
    side = 1.0 / (2.0 - beta)
    middle = -beta / (2.0 - beta)
    return SymplecticCoefficients(
        c=(outer, inner, inner, outer),
        d=(side, middle, side, 0.0),
        beta=beta,
    )
