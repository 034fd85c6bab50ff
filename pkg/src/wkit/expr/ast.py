"""Expression trees shared by the command line and the certificate verifier.

Nodes are frozen dataclasses, so structurally equal trees compare equal and
can be hashed.  ``to_text`` prints the canonical form; parsing that text
gives the same tree back.
"""

from dataclasses import dataclass
from fractions import Fraction


class Node:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Num(Node):
    value: Fraction


@dataclass(frozen=True)
class Param(Node):
    """The declared prime ``p``."""


@dataclass(frozen=True)
class Var(Node):
    index: int


@dataclass(frozen=True)
class TPow(Node):
    exponent: Fraction


@dataclass(frozen=True)
class SeriesAtom(Node):
    """A named series supplied by the caller rather than written out."""

    name: str


@dataclass(frozen=True)
class Add(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Sub(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Mul(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Div(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Neg(Node):
    child: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Gamma(Node):
    child: Node


@dataclass(frozen=True)
class Wp(Node):
    child: Node


@dataclass(frozen=True)
class Inv(Node):
    child: Node


@dataclass(frozen=True)
class KFrac(Node):
    """f / (1 - p*g)."""

    num: Node
    g: Node


@dataclass(frozen=True)
class SosInv(Node):
    """1 / (1 + sum of squares of the children)."""

    children: tuple


def num(c):
    return Num(Fraction(c))


def children(node):
    if isinstance(node, (Add, Sub, Mul, Div)):
        return (node.left, node.right)
    if isinstance(node, (Neg, Gamma, Wp, Inv)):
        return (node.child,)
    if isinstance(node, Pow):
        return (node.base,)
    if isinstance(node, KFrac):
        return (node.num, node.g)
    if isinstance(node, SosInv):
        return node.children
    return ()


def walk(node):
    """Pre-order traversal."""
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(children(n)))


def max_var(node):
    return max((n.index for n in walk(node) if isinstance(n, Var)), default=0)


# -- canonical printing ---------------------------------------------------------

_ADD, _MUL, _UNARY, _POW, _ATOM = range(5)


def _level(node):
    if isinstance(node, (Add, Sub)):
        return _ADD
    if isinstance(node, (Mul, Div)):
        return _MUL
    if isinstance(node, Neg):
        return _UNARY
    if isinstance(node, Pow):
        return _POW
    if isinstance(node, Num) and node.value.denominator != 1:
        return _MUL
    if isinstance(node, TPow) and node.exponent != 1:
        return _POW
    return _ATOM


def _wrap(node, minimum):
    text = to_text(node)
    return f"({text})" if _level(node) < minimum else text


def _format_exponent(q):
    if q.denominator == 1 and q >= 0:
        return str(q.numerator)
    return f"({q})"


def to_text(node):
    if isinstance(node, Num):
        v = node.value
        if v < 0:
            return f"-{to_text(Num(-v))}"
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Param):
        return "p"
    if isinstance(node, Var):
        return f"X{node.index}"
    if isinstance(node, SeriesAtom):
        return node.name
    if isinstance(node, TPow):
        return "t" if node.exponent == 1 else f"t^{_format_exponent(node.exponent)}"
    if isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        return _wrap(node.left, _ADD) + op + _wrap(node.right, _MUL)
    if isinstance(node, (Mul, Div)):
        op = "*" if isinstance(node, Mul) else "/"
        return _wrap(node.left, _MUL) + op + _wrap(node.right, _UNARY)
    if isinstance(node, Neg):
        return "-" + _wrap(node.child, _UNARY)
    if isinstance(node, Pow):
        # (t)^2 keeps the power node distinct from the monomial t^2
        base = node.base
        text = f"({to_text(base)})" if isinstance(base, TPow) else _wrap(base, _ATOM)
        return text + f"^{node.exponent}"
    if isinstance(node, Gamma):
        return f"gamma({to_text(node.child)})"
    if isinstance(node, Wp):
        return f"wp({to_text(node.child)})"
    if isinstance(node, Inv):
        return f"inv({to_text(node.child)})"
    if isinstance(node, KFrac):
        return f"kfrac({to_text(node.num)}; {to_text(node.g)})"
    if isinstance(node, SosInv):
        return "sosinv(" + ", ".join(to_text(c) for c in node.children) + ")"
    raise TypeError(f"not an expression node: {node!r}")
