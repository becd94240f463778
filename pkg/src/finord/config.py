"""Size caps for the exponential scans.

Every exhaustive enumeration in the package is guarded by one of these
bounds and raises CarrierTooLarge instead of silently sampling.  Operations
that support a sampled fallback (the fixed-point hypothesis checks, the
union-closure check) switch modes at the bound and report which mode ran.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Bounds:
    inductive_cap: int = 12        # is_inductive: chain enumeration over the carrier
    hypothesis_cap: int = 12       # fixed-point prerequisites: subset scan
    subset_scan_cap: int = 12      # oracle well-ordered-subset scan
    scan_cap: int = 20             # oracle fixed-point / maximal scans
    enumeration_cap: int = 4       # oracle preorder enumeration
    chain_poset_cap: int = 5       # base carrier for the poset of well-ordered chains
    family_cap: int = 12           # exhaustive union-closure check
    sample_size: int = 256         # draws used by sampled fallbacks
    sample_seed: int = 0           # seed for sampled fallbacks

    def with_max_size(self, size: int) -> "Bounds":
        """Raise every cap to at least ``size`` (CLI --max-size)."""
        return replace(
            self,
            inductive_cap=max(self.inductive_cap, size),
            hypothesis_cap=max(self.hypothesis_cap, size),
            subset_scan_cap=max(self.subset_scan_cap, size),
            scan_cap=max(self.scan_cap, size),
            enumeration_cap=max(self.enumeration_cap, size),
            chain_poset_cap=max(self.chain_poset_cap, size),
            family_cap=max(self.family_cap, size),
        )


DEFAULT_BOUNDS = Bounds()
