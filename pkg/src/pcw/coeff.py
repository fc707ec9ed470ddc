"""Exact scalar arithmetic over rationals extended by declared symbols.

A scalar is a fraction of multivariate polynomials with rational
coefficients.  Symbols come in two kinds: parameters (zero differential)
and function symbols, whose exterior differential must be declared as a
formal combination of coframe generators.  Asking for the differential of
a function symbol that has none declared is an error, never a silent zero.
"""

from __future__ import annotations

from fractions import Fraction

import sympy as sp

from .errors import DivisionByZero, UndeclaredSymbol

PARAMETER = "parameter"
FUNCTION = "function"


def _canonical(expr, order):
    """Reduce expr to (num, den): gcd-free, den monic under graded lex."""
    e = sp.cancel(sp.together(expr))
    num, den = sp.fraction(e)
    num = sp.expand(num)
    den = sp.expand(den)
    if den == 0:
        raise DivisionByZero("zero denominator")
    if num == 0:
        return sp.S.Zero, sp.S.One
    free = den.free_symbols
    if not free:
        num = sp.expand(num / den)
        return num, sp.S.One
    gens = [s for s in (order or ())]
    gens.extend(sorted(free - set(gens), key=str))
    lead = sp.Poly(den, *gens).terms(order="grlex")[0][1]
    return sp.expand(num / lead), sp.expand(den / lead)


def _coerce_expr(value):
    if isinstance(value, CoeffScalar):
        return value.num / value.den
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    if isinstance(value, (int, sp.Expr)):
        return sp.sympify(value)
    raise TypeError(f"cannot build a scalar from {value!r}")


def _merge_order(a, b):
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise ValueError("scalars belong to different symbol tables")


class CoeffScalar:
    """Element of the coefficient field, kept in canonical form.

    Canonical form: numerator/denominator coprime, denominator monic with
    respect to graded-lex over the declared symbol order (so equality is
    plain structural comparison of the pair).
    """

    __slots__ = ("num", "den", "order")

    def __init__(self, value=0, order=None):
        if isinstance(value, CoeffScalar):
            order = _merge_order(order, value.order)
        self.num, self.den = _canonical(_coerce_expr(value), order)
        self.order = order

    @classmethod
    def _raw(cls, num, den, order):
        obj = object.__new__(cls)
        obj.num, obj.den, obj.order = num, den, order
        return obj

    def as_expr(self) -> sp.Expr:
        return self.num if self.den == 1 else self.num / self.den

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    @property
    def is_rational(self) -> bool:
        return not (self.num.free_symbols or self.den.free_symbols)

    def free_symbols(self):
        return self.num.free_symbols | self.den.free_symbols

    def __bool__(self):
        return not self.is_zero

    def _binop(self, other, fn):
        if not isinstance(other, CoeffScalar):
            other = CoeffScalar(other)
        order = _merge_order(self.order, other.order)
        return CoeffScalar(fn(self.as_expr(), other.as_expr()), order)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, CoeffScalar):
            other = CoeffScalar(other)
        if other.is_zero:
            raise DivisionByZero("division by the zero function")
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        if self.is_zero:
            raise DivisionByZero("division by the zero function")
        return self._binop(other, lambda a, b: b / a)

    def __neg__(self):
        return CoeffScalar._raw(sp.expand(-self.num), self.den, self.order)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, sp.Expr)):
            other = CoeffScalar(other)
        if not isinstance(other, CoeffScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def subs(self, mapping) -> "CoeffScalar":
        """Substitute symbols (name or Symbol keys) and recanonicalize."""
        repl = {}
        for key, val in mapping.items():
            sym = sp.Symbol(key) if isinstance(key, str) else key
            repl[sym] = _coerce_expr(val)
        return CoeffScalar(self.as_expr().subs(repl, simultaneous=True), self.order)

    def __repr__(self):
        return f"CoeffScalar({self.as_expr()})"

    def __str__(self):
        return str(self.as_expr())


ZERO = CoeffScalar(0)
ONE = CoeffScalar(1)


def scalar_arith(a: CoeffScalar, b: CoeffScalar, op: str) -> CoeffScalar:
    """Field arithmetic dispatch; op is one of '+', '-', '*', '/'."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


class SymbolTable:
    """Declared symbols with their kinds and exterior differentials.

    ``symbols`` is an ordered list of (name, kind) pairs with kind in
    {parameter, function}.  ``differentials`` maps a function-symbol name
    to a dict ``generator name -> coefficient``; function symbols without
    an entry have an *undeclared* differential and differentiating them
    raises.  Parameters always differentiate to zero.
    """

    def __init__(self, symbols=(), differentials=None):
        self.symbols = tuple((str(n), str(k)) for n, k in symbols)
        names = [n for n, _ in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError("duplicate symbol names")
        for _, kind in self.symbols:
            if kind not in (PARAMETER, FUNCTION):
                raise ValueError(f"unknown symbol kind {kind!r}")
        self.kinds = dict(self.symbols)
        self.order = tuple(sp.Symbol(n) for n in names)
        self.differentials = {}
        for name, oneform in (differentials or {}).items():
            if name not in self.kinds:
                raise ValueError(f"differential declared for unknown symbol {name!r}")
            if self.kinds[name] != FUNCTION:
                raise ValueError(f"parameter {name!r} cannot carry a differential")
            entry = {}
            for gen, coefficient in oneform.items():
                c = self.scalar(coefficient)
                if not c.is_zero:
                    entry[str(gen)] = c
            self.differentials[name] = entry
        for name, entry in self.differentials.items():
            for c in entry.values():
                self._check_declared(c.free_symbols(), f"d{name}")

    def _check_declared(self, syms, where):
        for s in syms:
            if str(s) not in self.kinds:
                raise UndeclaredSymbol(f"symbol {s} in {where} is not declared")

    def scalar(self, value) -> CoeffScalar:
        """Build a table-bound scalar and check its symbols are declared."""
        c = CoeffScalar(value, order=self.order)
        self._check_declared(c.free_symbols(), "scalar")
        return c

    def names(self):
        return [n for n, _ in self.symbols]

    def __eq__(self, other):
        if not isinstance(other, SymbolTable):
            return NotImplemented
        return self.symbols == other.symbols and self.differentials == other.differentials

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"SymbolTable({list(self.symbols)})"


EMPTY_TABLE = SymbolTable()


def scalar_diff(a: CoeffScalar, table: SymbolTable) -> dict:
    """Exterior differential of a scalar as {generator name: coefficient}.

    Extends the declared symbol differentials by the Leibniz and quotient
    rules.  Raises UndeclaredSymbol if ``a`` involves an unknown symbol or
    genuinely depends on a function symbol with no declared differential.
    """
    table._check_declared(a.free_symbols(), "scalar")
    expr = a.as_expr()
    out: dict = {}
    for name, kind in table.symbols:
        if kind != FUNCTION:
            continue
        partial = sp.diff(expr, sp.Symbol(name))
        if partial == 0:
            continue
        if name not in table.differentials:
            raise UndeclaredSymbol(
                f"d{name} is not declared but the differential requires it")
        pc = CoeffScalar(partial, order=table.order)
        for gen, coefficient in table.differentials[name].items():
            acc = out.get(gen, ZERO) + pc * coefficient
            if acc.is_zero:
                out.pop(gen, None)
            else:
                out[gen] = acc
    return out


def sqrt_in_field(a: CoeffScalar):
    """Square root of a scalar inside the field, or None if not a square."""
    if a.is_zero:
        return CoeffScalar(0, order=a.order)

    def poly_sqrt(expr):
        if not expr.free_symbols:
            r = sp.sqrt(expr)
            return r if r.is_rational else None
        content, factors = sp.factor_list(expr)
        root = sp.sqrt(content)
        if not root.is_rational:
            return None
        for base, exponent in factors:
            if exponent % 2:
                return None
            root *= base ** (exponent // 2)
        return root

    rn = poly_sqrt(a.num)
    rd = poly_sqrt(a.den)
    if rn is None or rd is None:
        return None
    return CoeffScalar(rn / rd, order=a.order)
