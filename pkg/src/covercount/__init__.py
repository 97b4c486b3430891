"""Exact counts of branched covers: brute-force Hurwitz numbers, closed forms
for even profiles, and the recursive genus-1 invariants S and U."""

from .closed_forms import near_cycle_pair, twos_complete, twos_cycles, twos_even, twos_odd
from .errors import CoverCountError
from .partitions import (Multiset, Partition, aut_profile_list, aut_single, make_partition,
                         pad_with_simple, rh_defect)
from .permutations import HurwitzQuery, connected_hurwitz, cycle_type, hurwitz, marked_hurwitz
from .sab import (MemoStore, ReductionTerm, SKey, normalize_b, reduce_a_terms, reduce_b_terms,
                  s_base, s_invariant, u_quartic, u_value, validate_key)
from .twos import TwosKey, n_twos_closed, n_twos_recursive

__version__ = "0.1.0"
