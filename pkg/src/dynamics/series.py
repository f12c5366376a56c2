"""
Skraćeni stepeni redovi
Aritmetika, kompozicija, exp/log i reverzija redova fiksnog reda
"""

import numpy as np
from numpy.polynomial import polynomial as npoly
from typing import Sequence, Union


class PowerSeries:
    """Stepeni red c_0 + c_1 w + ... + c_order w^order."""

    def __init__(self, c: Union[Sequence[complex], np.ndarray], order: int = None):
        c = np.asarray(c, dtype=np.complex128).ravel()
        if order is None:
            order = len(c) - 1
        coeffs = np.zeros(order + 1, dtype=np.complex128)
        n = min(len(c), order + 1)
        coeffs[:n] = c[:n]
        self.c = coeffs

    @property
    def order(self) -> int:
        return len(self.c) - 1

    @classmethod
    def identity(cls, order: int) -> "PowerSeries":
        return cls([0, 1], order)

    @classmethod
    def constant(cls, value: complex, order: int) -> "PowerSeries":
        return cls([value], order)

    def _coerce(self, x) -> "PowerSeries":
        if isinstance(x, PowerSeries):
            return PowerSeries(x.c, self.order)
        return PowerSeries([x], self.order)

    def __add__(self, x):
        return PowerSeries(self.c + self._coerce(x).c)

    __radd__ = __add__

    def __sub__(self, x):
        return PowerSeries(self.c - self._coerce(x).c)

    def __rsub__(self, x):
        return -self + x

    def __neg__(self):
        return PowerSeries(-self.c)

    def __mul__(self, x):
        if isinstance(x, PowerSeries):
            order = min(self.order, x.order)
            return PowerSeries(np.convolve(self.c, x.c)[:order + 1], order)
        return PowerSeries(x * self.c)

    __rmul__ = __mul__

    def __truediv__(self, x):
        if not isinstance(x, PowerSeries):
            return PowerSeries(self.c / x)
        if x.c[0] == 0:
            raise ZeroDivisionError("Slobodan član imenioca je nula")
        order = min(self.order, x.order)
        ans = np.zeros(order + 1, dtype=np.complex128)
        for n in range(order + 1):
            tot = self.c[n] - np.dot(ans[:n], x.c[n:0:-1]) if n else self.c[0]
            ans[n] = tot / x.c[0]
        return PowerSeries(ans)

    def __call__(self, w):
        return npoly.polyval(w, self.c)

    def deriv(self) -> "PowerSeries":
        if self.order == 0:
            return PowerSeries([0], 0)
        return PowerSeries(self.c[1:] * np.arange(1, self.order + 1), self.order - 1)

    def integral(self) -> "PowerSeries":
        """Primitivna funkcija sa nultim slobodnim članom, istog reda."""
        c = np.zeros(self.order + 1, dtype=np.complex128)
        c[1:] = self.c[:-1] / np.arange(1, self.order + 1)
        return PowerSeries(c)

    def exp(self) -> "PowerSeries":
        f = np.exp(self.c[0])
        x = self - self.c[0]
        ans = PowerSeries.constant(1.0, self.order)
        for n in range(self.order, 0, -1):
            ans = 1.0 + x * ans / float(n)
        return ans * complex(f)

    def log(self) -> "PowerSeries":
        """Glavna grana log, preko integrala s'/s."""
        if self.c[0] == 0:
            raise ZeroDivisionError("log reda sa nultim slobodnim članom")
        derivative = PowerSeries(self.deriv().c, self.order)
        ans = (derivative / self).integral()
        ans.c[0] = np.log(self.c[0])
        return ans

    def power(self, alpha: complex) -> "PowerSeries":
        """s^alpha = exp(alpha log s), glavna grana."""
        return (self.log() * complex(alpha)).exp()

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner(w)); inner mora imati nulti slobodan član."""
        if inner.c[0] != 0:
            raise ValueError("Unutrašnji red mora imati nulti slobodan član")
        order = min(self.order, inner.order)
        if order == 0:
            return PowerSeries.constant(self.c[0], 0)
        inner = PowerSeries(inner.c, order)
        ans = PowerSeries.constant(self.c[order], order)
        for coefficient in self.c[order - 1::-1]:
            ans = ans * inner + coefficient
        return ans

    def reversion(self) -> "PowerSeries":
        """Inverzni red g sa self(g(w)) = w (Njutnova iteracija na redovima)."""
        if self.c[0] != 0 or self.c[1] == 0:
            raise ValueError("Reverzija zahteva c_0 = 0 i c_1 != 0")
        w = PowerSeries.identity(self.order)
        g = PowerSeries([0, 1 / self.c[1]], self.order)
        derivative = PowerSeries(self.deriv().c, self.order)
        precision = 1
        while precision <= self.order:
            g = g - (self.compose(g) - w) / derivative.compose(g)
            precision *= 2
        return g

    def valuation(self, rel_tol: float = 1e-12) -> int:
        """Indeks prvog koeficijenta koji nije zanemarljiv."""
        threshold = rel_tol * max(float(np.max(np.abs(self.c))), 1e-300)
        nonzero = np.flatnonzero(np.abs(self.c) > threshold)
        return int(nonzero[0]) if nonzero.size else self.order + 1

    def radius_estimate(self) -> float:
        """Procena poluprečnika konvergencije iz druge polovine koeficijenata."""
        tail = [(n, abs(c)) for n, c in enumerate(self.c) if n >= max(1, self.order // 2) and c != 0]
        if not tail:
            return float("inf")
        return min(a ** (-1.0 / n) for n, a in tail)

    def __repr__(self):
        return f"PowerSeries({self.c!r})"
