"""Sparse two-variable Laurent polynomials with exact integer coefficients.

Terms are stored as a dict mapping exponent pairs to nonzero ints, with
the pair of variable names kept as metadata.  This is the common value
type for the Kauffman polynomial F(a,z), the HOMFLY-PT polynomial
P(a,z), the Dubrovnik polynomial, and Poincare polynomials in (q,t).
"""

from __future__ import annotations

from typing import Dict, Iterable, Tuple

from .errors import DegreeOfZero, FormatError, VariableMismatch

Exponents = Tuple[int, int]


class LaurentPoly2:
    """Immutable sparse Laurent polynomial in two variables."""

    __slots__ = ("terms", "variables")

    def __init__(self, terms: Dict[Exponents, int] | None = None,
                 variables: Tuple[str, str] = ("a", "z")):
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff:
                    clean[(int(exps[0]), int(exps[1]))] = int(coeff)
        self.terms: Dict[Exponents, int] = clean
        self.variables = (str(variables[0]), str(variables[1]))

    # --- constructors ---

    @classmethod
    def zero(cls, variables=("a", "z")) -> "LaurentPoly2":
        return cls({}, variables)

    @classmethod
    def one(cls, variables=("a", "z")) -> "LaurentPoly2":
        return cls({(0, 0): 1}, variables)

    @classmethod
    def monomial(cls, coeff: int, e1: int, e2: int,
                 variables=("a", "z")) -> "LaurentPoly2":
        return cls({(e1, e2): coeff}, variables)

    # --- basics ---

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentPoly2)
                and self.variables == other.variables
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def _check_compatible(self, other: "LaurentPoly2") -> None:
        if self.variables != other.variables:
            raise VariableMismatch(
                f"cannot combine polynomials in {self.variables} and {other.variables}")

    # --- arithmetic ---

    def __add__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        self._check_compatible(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            new = terms.get(exps, 0) + coeff
            if new:
                terms[exps] = new
            else:
                terms.pop(exps, None)
        return LaurentPoly2(terms, self.variables)

    def __neg__(self) -> "LaurentPoly2":
        return LaurentPoly2({e: -c for e, c in self.terms.items()}, self.variables)

    def __sub__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        self._check_compatible(other)
        terms: Dict[Exponents, int] = {}
        for (p1, q1), c1 in self.terms.items():
            for (p2, q2), c2 in other.terms.items():
                key = (p1 + p2, q1 + q2)
                new = terms.get(key, 0) + c1 * c2
                if new:
                    terms[key] = new
                else:
                    del terms[key]
        return LaurentPoly2(terms, self.variables)

    def scale(self, scalar: int) -> "LaurentPoly2":
        if scalar == 0:
            return LaurentPoly2.zero(self.variables)
        return LaurentPoly2({e: c * scalar for e, c in self.terms.items()},
                            self.variables)

    def shift(self, d1: int, d2: int) -> "LaurentPoly2":
        """Multiply by v1^d1 * v2^d2."""
        return LaurentPoly2({(p + d1, q + d2): c for (p, q), c in self.terms.items()},
                            self.variables)

    def __pow__(self, n: int) -> "LaurentPoly2":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = LaurentPoly2.one(self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # --- degree queries ---

    def _var_index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise VariableMismatch(
                f"no variable {var!r} in polynomial over {self.variables}") from None

    def max_deg(self, var: str) -> int:
        if not self.terms:
            raise DegreeOfZero("max_deg of the zero polynomial")
        i = self._var_index(var)
        return max(e[i] for e in self.terms)

    def min_deg(self, var: str) -> int:
        if not self.terms:
            raise DegreeOfZero("min_deg of the zero polynomial")
        i = self._var_index(var)
        return min(e[i] for e in self.terms)

    def breadth(self, var: str) -> int:
        return self.max_deg(var) - self.min_deg(var)

    def coefficient_of(self, var: str, power: int) -> "LaurentPoly2":
        """The coefficient of var^power, as a polynomial in the other variable."""
        i = self._var_index(var)
        terms: Dict[Exponents, int] = {}
        for exps, coeff in self.terms.items():
            if exps[i] == power:
                key = (0, exps[1]) if i == 0 else (exps[0], 0)
                terms[key] = coeff
        return LaurentPoly2(terms, self.variables)

    def substitute_mirror(self, var: str) -> "LaurentPoly2":
        """Substitute var -> var^-1 (used for mirror knots)."""
        i = self._var_index(var)
        terms = {}
        for exps, coeff in self.terms.items():
            e = list(exps)
            e[i] = -e[i]
            terms[(e[0], e[1])] = coeff
        return LaurentPoly2(terms, self.variables)

    # --- text form ---
    # One term per "c v1^p v2^q", joined by " + ", sorted by exponents;
    # parsing is exact so serialization round-trips bit for bit.

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        v1, v2 = self.variables
        parts = []
        for (p, q) in sorted(self.terms):
            parts.append(f"{self.terms[(p, q)]} {v1}^{p} {v2}^{q}")
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str, variables=("a", "z")) -> "LaurentPoly2":
        text = text.strip()
        if text == "0":
            return cls.zero(variables)
        v1, v2 = variables
        terms: Dict[Exponents, int] = {}
        for part in text.split(" + "):
            fields = part.split()
            if len(fields) != 3:
                raise FormatError(f"bad polynomial term {part!r}")
            coeff = int(fields[0])
            for fld, var in ((fields[1], v1), (fields[2], v2)):
                if not fld.startswith(var + "^"):
                    raise FormatError(f"expected {var}^<int> in {part!r}")
            p = int(fields[1].split("^", 1)[1])
            q = int(fields[2].split("^", 1)[1])
            if (p, q) in terms:
                raise FormatError(f"duplicate exponents in {text!r}")
            terms[(p, q)] = coeff
        return cls(terms, variables)

    def __repr__(self):
        return f"LaurentPoly2({self.to_text()!r}, variables={self.variables})"


def poly_sum(polys: Iterable[LaurentPoly2], variables=("a", "z")) -> LaurentPoly2:
    total = LaurentPoly2.zero(variables)
    for p in polys:
        total = total + p
    return total
