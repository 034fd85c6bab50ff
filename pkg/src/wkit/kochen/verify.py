"""Check certificate identities by clearing denominators.

Both sides are evaluated as fractions of truncated series.  When every
atom is a polynomial, the working order is raised to a degree bound for the
cleared identity, so the comparison is an exact polynomial identity check.
Otherwise it is a statement modulo total degree ``order`` and the result
carries ``exact=False``.
"""

from dataclasses import dataclass

from ..coefficients.fields import QQ
from ..errors import CertificateFormatError, NormViolation, ZeroDenominator
from ..expr import ast
from ..expr.evaluate import DegreeRing, FractionRing, SeriesRing, TateRing, evaluate
from ..powerseries.series import first_discrepancy
from .certificates import INTEGRAL_VALUED, LAMBDA, PADIC_NSS, REAL_H17, REAL_NSS

VERIFIED = "verified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

# Above this degree bound we fall back to verification modulo the requested order.
EXACT_DEGREE_CAP = 96


@dataclass(frozen=True)
class VerificationResult:
    verdict: str
    kind: str
    order: int = None
    exact: bool = True
    discrepancy_degree: int = None
    note: str = ""

    @property
    def ok(self):
        return self.verdict == VERIFIED

    def to_json(self):
        return {
            "verdict": self.verdict,
            "kind": self.kind,
            "order": self.order,
            "exact": self.exact,
            "discrepancy_degree": self.discrepancy_degree,
            "note": self.note,
        }

    def __str__(self):
        text = self.verdict
        if self.verdict == VERIFIED and not self.exact:
            text += f" (modulo degree {self.order})"
        if self.discrepancy_degree is not None:
            text += f" (first discrepancy in degree {self.discrepancy_degree})"
        if self.note:
            text += f": {self.note}"
        return text


def cert_eval(e, ring, order=None):
    """Evaluate an expression as a fraction (numerator, denominator) of series over ``ring``."""
    frac_ring = FractionRing(ring.nvars, ring.order if order is None else order, ring.field, ring.p, ring.atoms)
    return evaluate(e, frac_ring)


# -- structural membership checks -----------------------------------------------------


def _in_z_gamma(node):
    """Integer polynomial expression in gamma-values (the ring Z[gamma(F)])."""
    if isinstance(node, ast.Num):
        return node.value.denominator == 1
    if isinstance(node, (ast.Param, ast.Gamma)):
        return True
    if isinstance(node, (ast.Add, ast.Sub, ast.Mul)):
        return _in_z_gamma(node.left) and _in_z_gamma(node.right)
    if isinstance(node, ast.Neg):
        return _in_z_gamma(node.child)
    if isinstance(node, ast.Pow):
        return _in_z_gamma(node.base)
    return False


def _in_kochen_ring(node):
    """Sums and products of f/(1 - p g) with f, g in Z[gamma(F)]."""
    if _in_z_gamma(node):
        return True
    if isinstance(node, ast.KFrac):
        return _in_z_gamma(node.num) and _in_z_gamma(node.g)
    if isinstance(node, (ast.Add, ast.Sub, ast.Mul)):
        return _in_kochen_ring(node.left) and _in_kochen_ring(node.right)
    if isinstance(node, ast.Neg):
        return _in_kochen_ring(node.child)
    if isinstance(node, ast.Pow):
        return _in_kochen_ring(node.base)
    return False


# -- identity checking --------------------------------------------------------------------


def _sum(nodes):
    if not nodes:
        return ast.num(0)
    total = nodes[0]
    for n in nodes[1:]:
        total = ast.Add(total, n)
    return total


def _square(node):
    return ast.Pow(node, 2)


def sides(cert):
    """The two expressions whose equality the certificate asserts."""
    one = ast.num(1)
    if cert.kind == PADIC_NSS:
        g = cert.g if cert.g is not None else ast.num(0)
        lhs = ast.Mul(ast.Pow(cert.f, cert.k), ast.Sub(one, ast.Mul(ast.Param(), g)))
        rhs = _sum([ast.Mul(a, b) for a, b in zip(cert.gs, cert.hs)])
    elif cert.kind == LAMBDA:
        lhs = cert.f
        rhs = ast.Mul(cert.g, cert.lam)
    elif cert.kind == REAL_NSS:
        lhs = _sum([ast.Pow(cert.f, 2 * cert.k)] + [_square(b) for b in cert.bs])
        rhs = _sum([ast.Mul(a, b) for a, b in zip(cert.gs, cert.hs)])
    elif cert.kind == REAL_H17:
        lhs = ast.Mul(cert.f, _square(cert.g))
        rhs = _sum([_square(h) for h in cert.hs])
    else:
        raise CertificateFormatError(f"{cert.kind} is not an identity certificate")
    return lhs, rhs


def check_identity(lhs, rhs, nvars, order, p=None, field=QQ, atoms=None, kind=""):
    """Compare two expressions as fractions of series, exactly when possible."""
    atoms = dict(atoms or {})
    deg = DegreeRing(p, atoms)
    ln, ld = evaluate(lhs, deg)
    rn, rd = evaluate(rhs, deg)
    bound = max(ln + rd, rn + ld)
    work = order
    if not deg.inexact and bound <= EXACT_DEGREE_CAP:
        work = max(order, bound)
    ring = FractionRing(nvars, work, field, p, atoms)
    try:
        left = evaluate(lhs, ring)
        right = evaluate(rhs, ring)
    except ZeroDenominator as exc:
        if "working order" in str(exc):
            return VerificationResult(INCONCLUSIVE, kind, order, False, note=str(exc))
        raise
    a = left.num * right.den
    b = right.num * left.den
    exact = a.exact and b.exact
    denominator = left.den * right.den
    if exact:
        delta = first_discrepancy(a, b, work)
        if delta is None:
            return VerificationResult(VERIFIED, kind, work, True)
        return VerificationResult(REFUTED, kind, work, True, delta)
    delta = first_discrepancy(a, b, work)
    if delta is not None:
        return VerificationResult(REFUTED, kind, work, False, delta)
    if denominator.is_zero():
        return VerificationResult(INCONCLUSIVE, kind, work, False, note="denominators vanish to the working order")
    # Equal cross products determine the fractions only modulo the denominators' order.
    return VerificationResult(VERIFIED, kind, work - denominator.valuation_order(), False)


def _run(cert):
    lhs, rhs = sides(cert)
    return check_identity(lhs, rhs, cert.nvars, cert.order, cert.p, QQ, cert.atoms, cert.kind)


def verify_padic_nss_cert(cert):
    """PAdicNSS:  f^k (1 - p g) = sum g_i h_i   or   LambdaMembership:  f = g * lambda."""
    if cert.kind == PADIC_NSS:
        if cert.g is not None and not _in_z_gamma(cert.g):
            raise CertificateFormatError("g must be an integer polynomial in gamma-values")
    elif cert.kind == LAMBDA:
        if not _in_kochen_ring(cert.lam):
            raise CertificateFormatError("lambda must be built from kfrac(f; g) with f, g in Z[gamma]")
    else:
        raise CertificateFormatError(f"expected padic-nss or lambda, got {cert.kind}")
    return _run(cert)


def verify_real_cert(cert):
    """RealNSS:  f^(2k) + sum b_i^2 = sum g_i h_i   or   RealH17:  f g^2 = sum h_i^2."""
    if cert.kind not in (REAL_NSS, REAL_H17):
        raise CertificateFormatError(f"expected real-nss or real-h17, got {cert.kind}")
    return _run(cert)


def verify_integral_valued(cert):
    """f = g h exactly mod p^N with |h| <= 1 in the restricted power series ring."""
    if cert.kind != INTEGRAL_VALUED:
        raise CertificateFormatError(f"expected integral-valued, got {cert.kind}")
    ring = TateRing(cert.nvars, cert.p, cert.prec)
    f, g, h = (evaluate(e, ring) for e in (cert.f, cert.g, cert.h))
    norm = h.gauss_norm()
    if norm < 0:
        raise NormViolation(f"|h| = {cert.p}^{-norm} > 1")
    ok = f == g * h
    return VerificationResult(VERIFIED if ok else REFUTED, cert.kind, None, True)


def verify(cert):
    if cert.kind in (PADIC_NSS, LAMBDA):
        return verify_padic_nss_cert(cert)
    if cert.kind in (REAL_NSS, REAL_H17):
        return verify_real_cert(cert)
    return verify_integral_valued(cert)


def series_ring_for(cert):
    return SeriesRing(cert.nvars, cert.order, QQ, cert.p, cert.atoms)
