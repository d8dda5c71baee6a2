from ._core import (
    DomainError,
    Group,
    ResourceError,
    __version__,
    abelian,
    cohomology_dim,
    cup_class,
    cyclic,
    decompose_json,
    filtration_level,
    group_from_json,
    kummer_json,
    lift_json,
    massey_json,
    obstruct_json,
    u4bar,
    unitriangular,
)

__all__ = [
    "DomainError",
    "Group",
    "ResourceError",
    "__version__",
    "abelian",
    "cohomology_dim",
    "cup_class",
    "cyclic",
    "decompose_json",
    "filtration_level",
    "group_from_json",
    "kummer_json",
    "lift_json",
    "massey_json",
    "obstruct_json",
    "u4bar",
    "unitriangular",
]
