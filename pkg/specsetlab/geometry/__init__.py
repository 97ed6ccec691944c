from specsetlab.geometry.sphere_geometry import (
    boundary_arc,
    boundary_intersection,
    boundary_point,
    caratheodory_distance,
    circline_chart,
    classify_pair,
    disk_chart,
    disk_contains,
    interior_margin,
    median_circline,
    mobius_apply,
    mobius_compose,
    mobius_derivative,
    mobius_image_circline,
    mobius_image_disk,
    mobius_inverse,
    normalize_pair,
)
from specsetlab.geometry.tessellation import (
    build_tessellation,
    cell_of,
    drop_redundant_disks,
    integration_paths,
)
from specsetlab.geometry.export import export_geometry
