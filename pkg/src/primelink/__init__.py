"""Linking diagrams of primes, strict circularity and cd = 2 certificates."""

__version__ = "0.1.0"

from .residue import (  # noqa: E402
    InvalidPrimeError,
    discrete_log,
    is_prime,
    is_pth_power,
    linking_number,
    multiplicative_order,
    primitive_root,
)
from .diagram import LinkingDiagram, PrimeSet, build_diagram, has_edge  # noqa: E402
from .circuits import (  # noqa: E402
    CircuitVerdict,
    check_ordering,
    find_nonsingular_circuit,
    is_strictly_circular,
)
from .certification import (  # noqa: E402
    ChainStep,
    EdgeMode,
    Certificate,
    build_chain,
    certificate_problems,
    certify,
    certify_subset,
    going_up_ok,
    reachable_to,
    verify_certificate,
)
from .presentation import KochPresentation, koch_presentation, render_presentation  # noqa: E402
from .search import (  # noqa: E402
    EdgeConstraint,
    SearchBudget,
    SearchExhausted,
    construct_circular_set,
    extend_set,
    find_prime,
    parse_constraint,
)
