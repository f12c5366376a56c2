"""
Izuzeci za numeričku dinamiku
Svaki izuzetak nosi podatke potrebne za izveštaj
"""

from typing import Optional, Sequence


class DynamicsError(Exception):
    """Bazni izuzetak za sve numeričke greške biblioteke."""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class MalformedMapError(DynamicsError):
    """Preslikavanje nije validno (0/0 posle redukcije, nulti imenilac...)."""


class DegreeTooLargeError(DynamicsError):
    """Simbolička kompozicija bi prešla dozvoljeni stepen."""

    def __init__(self, message: str, degree: int, cap: int):
        super().__init__(message)
        self.degree = degree
        self.cap = cap


class RootFindingError(DynamicsError):
    """Simultana iteracija nije konvergirala."""

    def __init__(self, message: str, residuals: Optional[Sequence[float]] = None):
        super().__init__(message)
        self.residuals = list(residuals or [])


class NotQuadraticError(DynamicsError):
    """Vodeći koeficijent kvadratnog preslikavanja je nula."""


class OutsideValidityError(DynamicsError):
    """Tačka je van oblasti u kojoj karta važi."""

    def __init__(self, message: str, point: complex, radius: float):
        super().__init__(message)
        self.point = point
        self.radius = radius


class DegenerateInputError(DynamicsError):
    """Izbor grane nije jednoznačan."""


class LogBranchError(DynamicsError):
    """f(z)/z^m se anulira u radnom disku i disk se ne može dalje smanjiti."""

    def __init__(self, message: str, radius: float):
        super().__init__(message)
        self.radius = radius


class WrongFixedPointTypeError(DynamicsError):
    """Fiksna tačka nije odgovarajućeg tipa za konstrukciju."""

    def __init__(self, message: str, multiplier: complex):
        super().__init__(message)
        self.multiplier = multiplier


class ResonanceError(DynamicsError):
    """Imenilac lambda^(m/n) - 1 je praktično nula."""

    def __init__(self, message: str, index: int, value: complex):
        super().__init__(message)
        self.index = index
        self.value = value


class BranchError(DynamicsError):
    """Evaluacija prelazi granu logaritma."""

    def __init__(self, message: str, point: complex):
        super().__init__(message)
        self.point = point


class InvalidExponentError(DynamicsError):
    """Traženi stepen iterativnog korena nije ceo koren stepena polinoma."""

    def __init__(self, message: str, degree: int, exponent: int):
        super().__init__(message)
        self.degree = degree
        self.exponent = exponent


class DegenerateLatticeError(DynamicsError):
    """Diskriminanta g2^3 - 27 g3^2 je nula."""

    def __init__(self, message: str, discriminant: complex):
        super().__init__(message)
        self.discriminant = discriminant


class PoleError(DynamicsError):
    """Tačka je (skoro) na polu funkcije."""

    def __init__(self, message: str, point: complex):
        super().__init__(message)
        self.point = point


class NotSquarefreeError(DynamicsError):
    """Polinom ima višestruke korene."""

    def __init__(self, message: str, roots: Sequence[complex] = ()):
        super().__init__(message)
        self.roots = list(roots)


class CycleResidualError(DynamicsError):
    """Tačke ciklusa se ne preslikavaju jedna u drugu u okviru tolerancije."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class MapSpecError(DynamicsError):
    """Greška pri parsiranju opisa preslikavanja."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (pozicija {position})")
        self.position = position
