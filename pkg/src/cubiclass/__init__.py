"""cubiclass: prime-order automorphisms of smooth cubic hypersurfaces.

Exact-arithmetic library deciding which primes occur as automorphism orders
of smooth cubic n-folds, classifying the invariant families up to signature
equivalence with certified smooth witnesses, and computing the induced
character on Jacobian-ring graded pieces for the Klein hypersurfaces.
"""

from .admissibility import (
    admissible_primes,
    is_admissible,
    is_prime,
    max_admissible_prime,
    mult_order,
)
from .signatures import (
    AffinePermAction,
    BudgetExceededError,
    Signature,
    act,
    canonicalize,
    enumerate_orbits,
    equivalent,
    normalize_weight,
)
from .forms import (
    CubicForm,
    EigenspaceBasis,
    eigenspace_basis,
    fermat,
    form_from_json,
    form_to_json,
    klein,
    klein_signature,
    lemma_base_feasible,
    partials,
    s3_dimension,
    weight_of,
)
from .smoothness import (
    DEFAULT_MODULI,
    PolyModQ,
    SingularWitness,
    SmoothnessCertificate,
    certify_smooth_over_Q,
    find_smooth_member,
    groebner_basis,
    is_smooth_mod_q,
    singular_point_from_lemma_base,
)
from .classify import (
    FamilyRecord,
    RunConfig,
    classify,
    classify_all,
    classify_with_audit,
    family_dimension,
    fermat_membership,
    normalizer_dim,
)
from .hodge import (
    SpectrumSet,
    is_stable_under,
    jacobian_ring_character,
    klein_tangent_spectrum,
)

__version__ = "0.1.0"
