"""Certificates for Nullstellensatz-type identities and a definiteness falsifier."""

from ..expr.ast import Node as CertExpr
from .certificates import (
    INTEGRAL_VALUED,
    KINDS,
    LAMBDA,
    PADIC_NSS,
    REAL_H17,
    REAL_NSS,
    Certificate,
    parse_certificate,
)
from .sampler import SampleReport, sample_p_definiteness, sample_points
from .verify import (
    INCONCLUSIVE,
    REFUTED,
    VERIFIED,
    VerificationResult,
    cert_eval,
    check_identity,
    sides,
    verify,
    verify_integral_valued,
    verify_padic_nss_cert,
    verify_real_cert,
)
