"""Expression trees: parser, canonical printer and ring evaluators."""

from .ast import (
    Add,
    Div,
    Gamma,
    Inv,
    KFrac,
    Mul,
    Neg,
    Node,
    Num,
    Param,
    Pow,
    SeriesAtom,
    SosInv,
    Sub,
    TPow,
    Var,
    Wp,
    max_var,
    num,
    to_text,
    walk,
)
from .evaluate import (
    DegreeRing,
    Frac,
    FractionRing,
    PointRing,
    PuiseuxRing,
    Ring,
    SeriesRing,
    TateRing,
    evaluate,
    parse_in,
)
from .parser import parse_expression
