"""
Default bounds and per-call configuration objects
"""
from dataclasses import dataclass


# Defaults for every bounded search in the package
DEFAULT_SETTINGS = {
    'rewrite_depth': 12,
    'rewrite_cap': 512,
    'clause_limit': 4096,
    'search_depth': 30,
    'normalize_budget': 10000,
    'atom_limit': 20,
}


def _require_positive(owner, **values):
    for name, value in values.items():
        if not isinstance(value, int) or value <= 0:
            raise ValueError(f'{owner}.{name} must be a positive integer, got {value!r}')


@dataclass(frozen=True)
class RewriteBounds:
    """Depth and size bounds for closure computations"""
    depth: int = DEFAULT_SETTINGS['rewrite_depth']
    cap: int = DEFAULT_SETTINGS['rewrite_cap']

    def __post_init__(self):
        _require_positive('RewriteBounds', depth=self.depth, cap=self.cap)


@dataclass(frozen=True)
class CheckConfig:
    """Rewriting bounds used by the proof-term checker"""
    depth: int = DEFAULT_SETTINGS['rewrite_depth']
    cap: int = DEFAULT_SETTINGS['rewrite_cap']

    def __post_init__(self):
        _require_positive('CheckConfig', depth=self.depth, cap=self.cap)

    @property
    def bounds(self):
        return RewriteBounds(self.depth, self.cap)


@dataclass(frozen=True)
class SearchConfig:
    """Sequent search configuration

    Attributes:
        depth (int): Maximum number of rule applications along a branch
        rewrite_depth (int): Depth bound for side-condition rewriting
        cap (int): Size bound for side-condition rewriting
        intuitionistic (bool): Keep at most one formula on the right
        allow_cut (bool): Permit atomic cuts on saturated branches
    """
    depth: int = DEFAULT_SETTINGS['search_depth']
    rewrite_depth: int = DEFAULT_SETTINGS['rewrite_depth']
    cap: int = DEFAULT_SETTINGS['rewrite_cap']
    intuitionistic: bool = False
    allow_cut: bool = False

    def __post_init__(self):
        _require_positive('SearchConfig', depth=self.depth,
                          rewrite_depth=self.rewrite_depth, cap=self.cap)

    @property
    def bounds(self):
        return RewriteBounds(self.rewrite_depth, self.cap)
