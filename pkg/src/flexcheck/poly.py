"""Sparse multivariate polynomials over Q or Q(e) with exact arithmetic.

Terms are dicts mapping exponent tuples to nonzero coefficients.  The
default term order is degrevlex with the ring's fixed variable order; a
block order (eliminating a leading group of variables) is available for
elimination ideals.
"""
from __future__ import annotations

from fractions import Fraction

from .numberfield import QEps

FIELD_Q = "Q"
FIELD_QE = "Q(e,e^4=-1)"


class TermOrder:
    """Monomial order given by a sort key on exponent tuples."""

    def __init__(self, name: str, key):
        self.name = name
        self.key = key

    def __repr__(self):
        return f"TermOrder({self.name})"


def degrevlex(n: int) -> TermOrder:
    def key(e):
        return (sum(e), tuple(-x for x in reversed(e)))

    return TermOrder("degrevlex", key)


def block_order(n_elim: int, n_total: int) -> TermOrder:
    """Elimination order: degrevlex on the first block, ties by degrevlex
    on the rest.  Any monomial using a block-1 variable beats every
    monomial without one."""

    def key(e):
        head, tail = e[:n_elim], e[n_elim:]
        return (
            sum(head),
            tuple(-x for x in reversed(head)),
            sum(tail),
            tuple(-x for x in reversed(tail)),
        )

    return TermOrder(f"block({n_elim})", key)


class PolyRing:
    """A polynomial ring: variable names, coefficient field, term order."""

    def __init__(self, names, field: str = FIELD_Q, order: TermOrder | None = None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if field not in (FIELD_Q, FIELD_QE):
            raise ValueError(f"unknown field {field!r}")
        self.field = field
        self.nvars = len(self.names)
        self.order = order if order is not None else degrevlex(self.nvars)
        self.index = {v: i for i, v in enumerate(self.names)}

    def coerce(self, c):
        if self.field == FIELD_Q:
            if isinstance(c, QEps):
                return c.rational_value()
            return Fraction(c)
        return QEps.coerce(c)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.coerce(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        i = self.index[name]
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {e: self.coerce(1)})

    def monomial(self, exps, c=1) -> "Polynomial":
        c = self.coerce(c)
        exps = tuple(int(x) for x in exps)
        if len(exps) != self.nvars or any(x < 0 for x in exps):
            raise ValueError("bad exponent vector")
        return Polynomial(self, {exps: c} if c else {})

    def from_terms(self, terms: dict) -> "Polynomial":
        clean = {}
        for e, c in terms.items():
            c = self.coerce(c)
            if c:
                clean[tuple(e)] = c
        return Polynomial(self, clean)

    def parse(self, text: str) -> "Polynomial":
        return _parse(self, text)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.field == other.field
            and self.order.name == other.order.name
        )

    def __hash__(self):
        return hash((self.names, self.field, self.order.name))

    def __repr__(self):
        return f"PolyRing({','.join(self.names)}; {self.field}; {self.order.name})"


class Polynomial:
    __slots__ = ("ring", "terms", "_lt")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lt = None

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QEps)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QEps)):
            c = self.ring.coerce(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {e: k * c for e, k in self.terms.items()})
        other = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                if s is None:
                    out[e] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        c = self.ring.coerce(other)
        return self * (self.ring.coerce(1) / c)

    def lt(self):
        """Leading (exponent, coefficient) under the ring order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if self._lt is None:
            e = max(self.terms, key=self.ring.order.key)
            self._lt = (e, self.terms[e])
        return self._lt

    def lm(self):
        return self.lt()[0]

    def lc(self):
        return self.lt()[1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        c = self.lc()
        if c == 1:
            return self
        inv = self.ring.coerce(1) / c
        return Polynomial(self.ring, {e: k * inv for e, k in self.terms.items()})

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index[name]
        if not self.terms:
            return 0
        return max(e[i] for e in self.terms)

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), self.ring.coerce(0))

    def constant_value(self):
        """The coefficient field value of a constant polynomial."""
        if not self.terms:
            return self.ring.coerce(0)
        zero = (0,) * self.ring.nvars
        if set(self.terms) != {zero}:
            raise ValueError("polynomial is not constant")
        return self.terms[zero]

    def diff(self, name: str) -> "Polynomial":
        i = self.ring.index[name]
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1 :]
                s = out.get(e2)
                s = c * e[i] if s is None else s + c * e[i]
                if s:
                    out[e2] = s
                else:
                    out.pop(e2, None)
        return Polynomial(self.ring, out)

    def evaluate(self, values: dict):
        """Evaluate at a point given as {name: field element}.

        Values may live in a larger field than the coefficients: a
        polynomial over Q evaluates fine at number-field points.
        """
        missing = [v for v in self.ring.names if v not in values]
        if missing:
            raise ValueError(f"no value for variable(s) {missing}")
        vals = [values[v] for v in self.ring.names]
        total = 0
        for e, c in self.terms.items():
            acc = c
            for x, k in zip(vals, e):
                if k:
                    acc = acc * x**k
            total = total + acc
        return total + Fraction(0) if isinstance(total, int) else total

    def subs(self, images: dict, target: PolyRing | None = None) -> "Polynomial":
        """Substitute polynomials for variables.

        Variables absent from `images` must exist in the target ring and map
        to themselves.
        """
        if target is None:
            some = next(iter(images.values()), None)
            target = some.ring if isinstance(some, Polynomial) else self.ring
        cache: dict[str, Polynomial] = {}
        for v in self.ring.names:
            img = images.get(v)
            if img is None:
                cache[v] = target.var(v)
            elif isinstance(img, Polynomial):
                if img.ring != target:
                    raise ValueError("substitution image in wrong ring")
                cache[v] = img
            else:
                cache[v] = target.const(img)
        out = target.zero()
        for e, c in self.terms.items():
            acc = target.const(c)
            for v, k in zip(self.ring.names, e):
                if k:
                    acc = acc * cache[v] ** k
            out = out + acc
        return out

    def sorted_terms(self) -> list:
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.ring.names, e) if k
            )
            cs = _coeff_str(c)
            if mono:
                if cs == "1":
                    s = mono
                elif cs == "-1":
                    s = f"-{mono}"
                else:
                    s = f"{cs}*{mono}"
            else:
                s = cs
            parts.append(s)
        text = parts[0]
        for p in parts[1:]:
            text += p if p.startswith("-") else "+" + p
        return text

    def __repr__(self):
        return f"<{self} in {','.join(self.ring.names)}>"


def _coeff_str(c) -> str:
    if isinstance(c, QEps):
        if c.is_rational():
            return str(c.rational_value())
        return f"({c})"
    return str(c)


# --- parser for the small polynomial grammar ----------------------------
#
# expr   := term (('+' | '-') term)*
# term   := factor (('*' | '/') factor)*
# factor := ('-')* atom ('^' int)*
# atom   := integer | name | '(' expr ')'
#
# 'e' is the built-in number-field generator when the ring is over Q(e).
# '/' requires a constant divisor.


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j])))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
        elif ch in "+-*/^()":
            if ch == "*" and i + 1 < len(text) and text[i + 1] == "*":
                tokens.append(("op", "^"))
                i += 2
            else:
                tokens.append(("op", ch))
                i += 1
        else:
            raise ValueError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ValueError(f"expected {op!r} at token {self.pos - 1}")

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek()[0] != "end":
            raise ValueError(f"trailing input at token {self.pos}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            _, op = self.take()
            q = self.factor()
            if op == "*":
                p = p * q
            else:
                p = p / q.constant_value()
        return p

    def factor(self) -> Polynomial:
        sign = 1
        while self.peek() == ("op", "-"):
            self.take()
            sign = -sign
        p = self.atom()
        while self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            p = p**val
        return p if sign == 1 else -p

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "name":
            if val in self.ring.index:
                return self.ring.var(val)
            if val == "e" and self.ring.field == FIELD_QE:
                from .numberfield import EPS

                return self.ring.const(EPS)
            raise ValueError(f"unknown variable {val!r}")
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ValueError(f"unexpected token {val!r}")


def _parse(ring: PolyRing, text: str) -> Polynomial:
    return _Parser(ring, text).parse()
