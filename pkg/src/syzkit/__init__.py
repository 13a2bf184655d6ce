"""Linear strands, syzygy ranks and generic syzygy schemes of quadric ideals over F_p."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BudgetExceeded,
    DegenerateSection,
    InvalidSyzygy,
    NoSolution,
    ParseError,
    SyzkitError,
)
from .polyring import QuadricIdeal, hilbert_probe  # noqa: E402
from .syzygy import (  # noqa: E402
    LinearStrand,
    Syzygy,
    linear_strand,
    rank_locus_probe,
    restrict_syzygies,
    syzygy_rank,
    syzygy_scheme_ideal,
)
from .gensyz import gensyz_equations, lift_projection  # noqa: E402
from .grass import dual_orthogonal_degree, minimal_syzygy, mukai_section, pluecker_ideal  # noqa: E402
from .rep import count_table, schur_dim  # noqa: E402
from .bott import bott_cohomology, corollary_holds  # noqa: E402
from .io import parse_ideal  # noqa: E402

__all__ = [
    "BudgetExceeded", "DegenerateSection", "InvalidSyzygy", "NoSolution", "ParseError", "SyzkitError",
    "QuadricIdeal", "hilbert_probe", "LinearStrand", "Syzygy", "linear_strand", "rank_locus_probe",
    "restrict_syzygies", "syzygy_rank", "syzygy_scheme_ideal", "gensyz_equations", "lift_projection",
    "dual_orthogonal_degree", "minimal_syzygy", "mukai_section", "pluecker_ideal", "count_table",
    "schur_dim", "bott_cohomology", "corollary_holds", "parse_ideal",
]
