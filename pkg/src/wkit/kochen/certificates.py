"""Certificate records and their small text format.

A certificate is one line (or several, joined) of the form

    padic-nss p=3 prec=8 order=12 f=X1 k=1 g=0 g1=X1*(1-3*gamma(X1)) h1=kfrac(1; gamma(X1))

The first word is the kind; the rest are ``key=value`` fields.  Values are
expressions and may contain spaces: a new field starts only at a
``name=`` that sits outside every parenthesis.  ``#`` starts a comment.
"""

import re
from dataclasses import dataclass, field

from ..errors import CertificateFormatError
from ..expr.ast import Node, max_var, to_text
from ..expr.parser import parse_expression

PADIC_NSS = "padic-nss"
LAMBDA = "lambda"
REAL_NSS = "real-nss"
REAL_H17 = "real-h17"
INTEGRAL_VALUED = "integral-valued"

KINDS = (PADIC_NSS, LAMBDA, REAL_NSS, REAL_H17, INTEGRAL_VALUED)

DEFAULT_ORDER = 12
DEFAULT_PREC = 20

_FIELD_START = re.compile(r"([A-Za-z][A-Za-z0-9_-]*)=")


@dataclass
class Certificate:
    kind: str
    f: Node
    g: Node = None
    gs: tuple = ()
    hs: tuple = ()
    bs: tuple = ()
    k: int = 1
    lam: Node = None
    h: Node = None
    p: int = None
    prec: int = DEFAULT_PREC
    order: int = DEFAULT_ORDER
    nvars: int = None
    atoms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CertificateFormatError(f"unknown certificate kind {self.kind!r}")
        for name in ("f", "g", "lam", "h"):
            value = getattr(self, name)
            if isinstance(value, str):
                setattr(self, name, parse_expression(value))
        for name in ("gs", "hs", "bs"):
            setattr(self, name, tuple(parse_expression(v) if isinstance(v, str) else v for v in getattr(self, name)))
        self._check_shape()
        if self.nvars is None:
            self.nvars = max([1] + [max_var(e) for e in self.expressions()] + [a.nvars for a in self.atoms.values()])

    def _check_shape(self):
        if self.k < 1:
            raise CertificateFormatError("k must be >= 1")
        if self.kind in (PADIC_NSS, REAL_NSS) and len(self.gs) != len(self.hs):
            raise CertificateFormatError(f"{len(self.gs)} g_i but {len(self.hs)} h_i")
        if self.kind in (PADIC_NSS, LAMBDA, INTEGRAL_VALUED) and self.p is None:
            raise CertificateFormatError(f"{self.kind} needs a prime p")
        need = {
            PADIC_NSS: ("f",),
            LAMBDA: ("f", "g", "lam"),
            REAL_NSS: ("f",),
            REAL_H17: ("f", "g"),
            INTEGRAL_VALUED: ("f", "g", "h"),
        }[self.kind]
        for name in need:
            if getattr(self, name) is None:
                raise CertificateFormatError(f"{self.kind} certificate is missing {name}")

    def expressions(self):
        out = [e for e in (self.f, self.g, self.lam, self.h) if e is not None]
        return out + list(self.gs) + list(self.hs) + list(self.bs)

    def to_text(self):
        parts = [self.kind]
        if self.p is not None:
            parts.append(f"p={self.p}")
        parts += [f"prec={self.prec}", f"order={self.order}", f"vars={self.nvars}"]
        if self.kind in (PADIC_NSS, REAL_NSS):
            parts.append(f"k={self.k}")
        for name, key in (("f", "f"), ("g", "g"), ("lam", "lambda"), ("h", "h")):
            value = getattr(self, name)
            if value is not None:
                parts.append(f"{key}={to_text(value)}")
        for prefix, seq in (("g", self.gs), ("h", self.hs), ("b", self.bs)):
            parts += [f"{prefix}{i}={to_text(e)}" for i, e in enumerate(seq, start=1)]
        return " ".join(parts)


def _split_fields(body):
    """Cut ``key=value`` fields at names that occur outside parentheses."""
    starts = []
    depth = 0
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and (i == 0 or body[i - 1].isspace()):
            m = _FIELD_START.match(body, i)
            if m:
                starts.append((i, m.group(1), m.end()))
                i = m.end()
                continue
        i += 1
    if body.strip() and (not starts or body[: starts[0][0]].strip()):
        raise CertificateFormatError(f"expected key=value, got {body.split()[0]!r}")
    fields = {}
    for n, (_, key, value_start) in enumerate(starts):
        end = starts[n + 1][0] if n + 1 < len(starts) else len(body)
        if key in fields:
            raise CertificateFormatError(f"field {key!r} given twice")
        fields[key] = body[value_start:end].strip()
    return fields


def _int_field(fields, key, default=None):
    if key not in fields:
        return default
    try:
        return int(fields.pop(key))
    except ValueError as exc:
        raise CertificateFormatError(f"{key} must be an integer") from exc


def _indexed(fields, prefix):
    found = {}
    for key in list(fields):
        m = re.fullmatch(prefix + r"([1-9][0-9]*)", key)
        if m:
            found[int(m.group(1))] = fields.pop(key)
    if sorted(found) != list(range(1, len(found) + 1)):
        raise CertificateFormatError(f"{prefix}-fields must be numbered 1..n without gaps")
    return tuple(parse_expression(found[i]) for i in range(1, len(found) + 1))


def parse_certificate(text, atoms=None):
    """Read the text format described in the module docstring."""
    lines = [line.split("#", 1)[0] for line in text.splitlines()]
    words = " ".join(lines).split(None, 1)
    if not words:
        raise CertificateFormatError("empty certificate")
    kind = words[0]
    if kind not in KINDS:
        raise CertificateFormatError(f"unknown certificate kind {kind!r}; expected one of {', '.join(KINDS)}")
    fields = _split_fields(words[1] if len(words) > 1 else "")
    p = _int_field(fields, "p")
    prec = _int_field(fields, "prec", DEFAULT_PREC)
    order = _int_field(fields, "order", DEFAULT_ORDER)
    nvars = _int_field(fields, "vars")
    k = _int_field(fields, "k", 1)
    exprs = {}
    for key in ("f", "g", "lambda", "h"):
        if key in fields:
            exprs[key] = parse_expression(fields.pop(key))
    hs = _indexed(fields, "h")
    gs = _indexed(fields, "g")
    bs = _indexed(fields, "b")
    if fields:
        raise CertificateFormatError(f"unknown field(s): {', '.join(sorted(fields))}")
    return Certificate(
        kind,
        exprs.get("f"),
        g=exprs.get("g"),
        gs=gs,
        hs=hs,
        bs=bs,
        k=k,
        lam=exprs.get("lambda"),
        h=exprs.get("h"),
        p=p,
        prec=prec,
        order=order,
        nvars=nvars,
        atoms=dict(atoms or {}),
    )
