"""Right-hand sides of the harmonic-sum identity families.

Each entry maps integer parameters to an MzvExpr. Aggregates of zeta values
are expanded to explicit terms here, and Euler's depth-two formula uses the
adjudicated sign. Parameters outside a family's validity range are refused
with a message naming the boundary; for those, evaluate the series through
``eta_on_qsym`` instead.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, Mapping, Optional, Tuple

from harmonic_sums.algebra.mzv import EULER_SIGN, MzvExpr, aggregate
from harmonic_sums.errors import OutOfRangeError, UnknownFamilyError

logger = logging.getLogger(__name__)


def z(*parts: int) -> MzvExpr:
    return MzvExpr.zeta_of(parts)


def const(value) -> MzvExpr:
    return MzvExpr.constant(Fraction(value))


# ----------------------------------------------------------------------
# Formulas
# ----------------------------------------------------------------------

def eulers_rhs(eq: int) -> MzvExpr:
    return z(3) * 2 if eq == 1 else z(4) * Fraction(5, 4)


def alternating_zeta_sum(k: int) -> MzvExpr:
    """z(k) - z(k-1) + ... +- z(2) -+ 1, the value of eta_(0,1,1)(p_k)."""
    result = const((-1) ** (k - 1))
    for i in range(k - 1):
        result = result + z(k - i) * (-1) ** i
    return result


def ch2_rhs(k: int, l: int) -> MzvExpr:
    if l >= 2:
        result = -z(l)
        for j in range(k + 1):
            result = result + z(k + l - j) * comb(k + l - j, k + 1 - j)
        return result
    if l == 1:
        result = const(1)
        for j in range(k):
            result = result + z(k + 1 - j)
        return result
    return const(1)


def qpnn1_rhs(k: int, l: int) -> MzvExpr:
    return z(k + l + 1) * comb(k + l + 1, k + 1)


def eta111_rhs(k: int, l: int) -> MzvExpr:
    return (qpnn1_rhs(k, l) - ch2_rhs(k, l)) * Fraction(1, 2)


def pn2_rhs(k: int, sign: int = EULER_SIGN) -> MzvExpr:
    result = z(k + 2) * Fraction(k + 3, 2)
    for j in range(2, k + 1):
        result = result + z(j) * z(k + 2 - j) * Fraction(sign, 2)
    return result


def eta3peh_rhs(eq: int, k: int) -> MzvExpr:
    if eq == 1:
        return z(k + 3) + z(3, k)
    if eq == 2:
        return z(k + 2, 1) + z(k + 1, 1, 1)
    result = z(k + 3)
    for j in range(2, k + 2):
        result = result + aggregate(k + 3, j, 'T')
    return result


def eta02eh_rhs(k: int, l: int) -> MzvExpr:
    result = z(l + k + 2) * comb(l + k + 1, k + 1)
    for p in range(k, l + k):
        result = result - aggregate(l + k + 2, l + k + 1 - p, 'R') * comb(p, k)
    return result


def eta02sc_rhs(eq: int, k: int) -> MzvExpr:
    if eq == 1:
        return z(k + 3) * (k + 2) - z(k + 2, 1)
    return z(k + 4) * comb(k + 3, 2) - z(k + 3, 1) * (k + 2) - z(k + 2, 2)


def eta002_rhs(eq: int, k: int) -> MzvExpr:
    if eq == 1:
        result = const(-(k + 1))
        for j in range(2, k + 3):
            result = result + z(j)
        return result
    sign = (-1) ** k
    result = z(2, k) - z(2) * (sign * k) + sign * (k + 1)
    for j in range(k - 2):
        result = result + z(k - j) * ((-1) ** (j + 1) * (j + 1))
    return result


def eta2eh_rhs(j: int, n: int) -> MzvExpr:
    if j == 0:
        return z(n + 2) * (n + 1)
    result = z(n + 2) * comb(n + 1, j + 1)
    for p in range(j, n + 1):
        result = result + aggregate(n + 2, p, 'T') * comb(p - 1, j - 1)
    return result


def off_proof_rhs(k: int, l: int) -> MzvExpr:
    result = MzvExpr()
    for p in range(k, l + k):
        result = result + aggregate(l + k + 2, p + 1, 'T') * comb(p, k)
    return result


def tail_rhs(k: int, q: int) -> MzvExpr:
    result = z(k + 1)
    for j in range(1, q - 1):
        result = result - Fraction(1, j ** (k + 1))
    return result * Fraction(1, factorial(q - 1))


HSQ_VALUES = {
    1: z(3),
    2: z(4) * Fraction(3, 4),
    3: z(4) * 2,
    4: z(4) * Fraction(11, 4),
    5: z(5) * 6,
}


# ----------------------------------------------------------------------
# Registry
# ----------------------------------------------------------------------

def _minimum(name: str, low: int, note: str = "") -> Callable[[Mapping[str, int]], Optional[str]]:
    def check(params: Mapping[str, int]) -> Optional[str]:
        if params[name] < low:
            return f"{name} must be at least {low}" + (f" ({note})" if note else "")
        return None
    return check


def _choice(name: str, values: Tuple[int, ...]) -> Callable[[Mapping[str, int]], Optional[str]]:
    def check(params: Mapping[str, int]) -> Optional[str]:
        if params[name] not in values:
            return f"{name} must be one of {', '.join(map(str, values))}"
        return None
    return check


def _j_within_n(params: Mapping[str, int]) -> Optional[str]:
    if not 0 <= params['j'] <= params['n']:
        return "j must satisfy 0 <= j <= n"
    return None


@dataclass(frozen=True)
class ClosedForm:
    """Registered right-hand side with its parameter names and validity checks."""

    name: str
    params: Tuple[str, ...]
    rhs: Callable[..., MzvExpr]
    checks: Tuple[Callable[[Mapping[str, int]], Optional[str]], ...] = ()
    anchor: str = ""

    def boundary_message(self, params: Mapping[str, int]) -> Optional[str]:
        """None when ``params`` lie in the validity range, else the reason they do not."""
        for check in self.checks:
            message = check(params)
            if message:
                return message
        return None


_QPNN1_BOUNDARY = (
    "k = 0 is outside the audited range: the printed value exceeds the series by zeta(l+1); "
    "use eta-symbolic for the M-basis value"
)

CLOSED_FORMS: Dict[str, ClosedForm] = {}


def _register(form: ClosedForm):
    CLOSED_FORMS[form.name] = form


_register(ClosedForm('eulers', ('eq',), eulers_rhs, (_choice('eq', (1, 2)),),
                     "Euler: sum H_n/n^2 = 2 z(3), sum H_n/n^3 = 5/4 z(4)"))
_register(ClosedForm('cho-P', ('k',), lambda k: const(1), (_minimum('k', 0),),
                     "sum_{n>=0} P_k(H_n..)/((n+1)(n+2)) = 1"))
_register(ClosedForm('cho-Q', ('k',), lambda k: ch2_rhs(k, 1), (_minimum('k', 1),),
                     "sum_{n>=0} H_n P_k(H_n..)/((n+1)(n+2)) = 1 + z(2) + ... + z(k+1)"))
_register(ClosedForm('ch2', ('k', 'l'), ch2_rhs, (_minimum('k', 0), _minimum('l', 0)),
                     "sum_{n>=0} Q_l P_k/((n+1)(n+2)), three cases in l"))
_register(ClosedForm('qpnn1', ('k', 'l'), qpnn1_rhs,
                     (_minimum('k', 1, _QPNN1_BOUNDARY), _minimum('l', 0)),
                     "sum Q_l P_k/(n(n+1)) = C(k+l+1,k+1) z(k+l+1)"))
_register(ClosedForm('qn2', ('k',), lambda k: z(k + 2) * (k + 1), (_minimum('k', 0),),
                     "sum Q_k/n^2 = (k+1) z(k+2)"))
_register(ClosedForm('pn2', ('k',), pn2_rhs, (_minimum('k', 1),),
                     "sum P_k/n^2 = (k+3)/2 z(k+2) - 1/2 sum_{j=2}^k z(j) z(k+2-j) (corrected sign)"))
_register(ClosedForm('off', ('k', 'l'), lambda k, l: z(l + k + 2) * comb(l + k + 1, l),
                     (_minimum('k', 0), _minimum('l', 0)),
                     "sum_{n>=0} Q_l(H_{n+1}..) P_k(H_n..)/(n+1)^2 = C(l+k+1,l) z(l+k+2)"))
_register(ClosedForm('eta111', ('k', 'l'), eta111_rhs,
                     (_minimum('k', 1, "k = 0 inherits the qpnn1 boundary"), _minimum('l', 0)),
                     "sum Q_l P_k/(n(n+1)(n+2)) = (qpnn1 - ch2)/2 (corrected binomials)"))
_register(ClosedForm('spiess', ('k', 'q'),
                     lambda k, q: const(Fraction(1, factorial(q - 1) * (q - 1) ** (k + 1))),
                     (_minimum('k', 0), _minimum('q', 2)),
                     "sum_{n>=0} P_k/((n+1)...(n+q)) = 1/((q-1)! (q-1)^(k+1))"))
_register(ClosedForm('tail', ('k', 'q'), tail_rhs, (_minimum('k', 1), _minimum('q', 2)),
                     "sum P_k/(n...(n+q-1)) = (z(k+1) - sum_{j<=q-2} j^-(k+1))/(q-1)!"))
_register(ClosedForm('so-cor', ('k',), alternating_zeta_sum, (_minimum('k', 2),),
                     "sum H_n^(k)/((n+1)(n+2)) = sum_{i=0}^{k-2} (-1)^i z(k-i) + (-1)^(k-1)"))
_register(ClosedForm('omp', ('k',), alternating_zeta_sum, (_minimum('k', 1),),
                     "eta_{0,1,1}(p_k) = z(k) - z(k-1) + ... + (-1)^n z(2) + (-1)^(n+1)"))
_register(ClosedForm('eta3peh', ('eq', 'k'), eta3peh_rhs, (_choice('eq', (1, 2, 3)), _minimum('k', 1)),
                     "sums of H_n^(k), P_k, Q_k over n^3"))
_register(ClosedForm('eta02pe', ('eq', 'k'),
                     lambda eq, k: z(2, k) if eq == 1 else z(k + 2),
                     (_choice('eq', (1, 2)), _minimum('k', 1)),
                     "sum H_n^(k)/(n+1)^2 = z(2,k); sum P_k/(n+1)^2 = z(k+2)"))
_register(ClosedForm('hsq', ('eq',), lambda eq: HSQ_VALUES[eq], (_choice('eq', (1, 2, 3, 4, 5)),),
                     "special values of sums over (n+1)^2, e.g. sum H_n^2/(n+1)^2 = 11/4 z(4)"))
_register(ClosedForm('h-pair', ('k',), lambda k: z(k + 3) * (k + 2), (_minimum('k', 0),),
                     "eta_{0,2}(h_{k+1}) + eta_3(h_k) = (k+2) z(k+3)"))
_register(ClosedForm('eta02eh', ('k', 'l'), eta02eh_rhs, (_minimum('k', 0), _minimum('l', 0)),
                     "sum_{n>=0} Q_l P_k/(n+1)^2 = C(l+k+1,k+1) z(l+k+2) - sum C(p,k) S^R"))
_register(ClosedForm('eta02sc', ('eq', 'k'), eta02sc_rhs, (_choice('eq', (1, 2)), _minimum('k', 1)),
                     "sums of H_n P_k and (H_n^2 + H_n^(2)) P_k / 2 over (n+1)^2"))
_register(ClosedForm('cof-remark', (), lambda: z(6) * Fraction(859, 24) + z(3) * z(3) * 3, (),
                     "sum H_n^4/(n+1)^2 = 859/24 z(6) + 3 z(3)^2"))
_register(ClosedForm('en1h1', ('n',), lambda n: z(n, 2) + z(n + 1, 1) * n + z(n + 2) * (n + 1),
                     (_minimum('n', 2),),
                     "eta_2(e_{n-1} h_1) = z(n,2) + n z(n+1,1) + (n+1) z(n+2)"))
_register(ClosedForm('eta002', ('eq', 'k'), eta002_rhs, (_choice('eq', (1, 2)), _minimum('k', 1)),
                     "eta_{0,0,2}(e_k) and eta_{0,0,2}(p_k)"))
_register(ClosedForm('length2-example', (), lambda: z(4) * Fraction(17, 4) - z(3) * 3, (),
                     "sum H_n^2/(n^2 (n+1)) = 17/4 z(4) - 3 z(3)"))
_register(ClosedForm('eta2eh', ('j', 'n'), eta2eh_rhs, (_minimum('n', 0), _j_within_n),
                     "eta_2(e_j h_{n-j}) through S^T aggregates"))
_register(ClosedForm('off-proof', ('k', 'l'), off_proof_rhs, (_minimum('k', 0), _minimum('l', 1)),
                     "sum_{j=3}^{l+2} eta_{0,j}(e_k h_{2+l-j}) = sum C(p,k) S^T_{l+k+2,p+1}"))
_register(ClosedForm('spiess-base', ('q',), lambda q: const(Fraction(1, factorial(q - 1) * (q - 1))),
                     (_minimum('q', 2),),
                     "H(1,...,1) = sum 1/(n(n+1)...(n+q-1)) = 1/((q-1)! (q-1))"))


def get_closed_form(family: str) -> ClosedForm:
    try:
        return CLOSED_FORMS[family]
    except KeyError:
        raise UnknownFamilyError(f"No identity family named {family!r}") from None


def normalize_params(form: ClosedForm, params: Mapping[str, int]) -> Dict[str, int]:
    """Keep only the family's parameters, requiring every one of them."""
    missing = [name for name in form.params if params.get(name) is None]
    if missing:
        raise OutOfRangeError(f"{form.name} needs parameter(s): {', '.join(missing)}")
    return {name: int(params[name]) for name in form.params}


def closed_form(family: str, params: Optional[Mapping[str, int]] = None) -> MzvExpr:
    """Right-hand side of an identity family at the given parameters.

    Raises:
        UnknownFamilyError: if the family is not registered
        OutOfRangeError: if the parameters lie outside the validity range
    """
    form = get_closed_form(family)
    values = normalize_params(form, params or {})
    message = form.boundary_message(values)
    if message:
        raise OutOfRangeError(f"{family} at {values}: {message}")
    return form.rhs(**values)
