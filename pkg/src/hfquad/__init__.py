"""Half-factoriality of orders in quadratic number fields."""

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop all memoized field, ideal and residue data (for cold timings)."""
    from . import field, ideals, local, order, residue

    for fn in (
        field.unit_group,
        ideals.splitting_type,
        ideals.elements_of_norm,
        ideals.class_number,
        local._quotient,
        order._unit_index,
        residue._global_unit_image,
    ):
        fn.cache_clear()
