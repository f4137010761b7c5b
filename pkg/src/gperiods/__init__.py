"""Exact and numerical tools for cyclotomic and lattice period sums.

Modules:
  modring   residues, matrices mod n, multiplicative orders, order-d search
  laurent   integer polynomials, cyclotomics, hypocycloid containment
  periods   Gaussian periods and supercharacter values as plottable points
  weyl      exact character-sum criterion, numeric sums, discrepancy
  cm        imaginary quadratic lattices, wp, torsion periods
  render    deterministic PNG scatter plots and frame sequences
  cli       the `gperiods` command
"""

__version__ = "0.1.0"

from .errors import (
    BadExponent,
    BudgetExceeded,
    ClassNumberNotOne,
    DimensionMismatch,
    EmptyPointSet,
    GPeriodsError,
    IdentityTorsionPoint,
    ImpossibleOrder,
    ModulusMismatch,
    NotADivisor,
    NotAUnit,
    NotFound,
    NotInvertible,
    NotMonic,
    NotPrime,
    NotSquarefree,
    PoleAtLattice,
    ToleranceOutOfRange,
)
from .laurent import (
    IntPolynomial,
    ReductionTable,
    TorusPoint,
    cyclotomic,
    eval_g,
    hypocycloid_boundary,
    inside_filled_hypocycloid,
    prop6_decompose,
    prop6_inside_batch,
    reduction_table,
    sample_image,
    x_pow_minus_one,
)
from .modring import (
    FactoredModulus,
    MatrixModN,
    Residue,
    check_cyclotomic_vanishing,
    companion_matrix,
    factor,
    find_matrix,
    identity,
    mat_from_rows,
    mat_mul,
    mat_order,
    mat_pow,
    mat_vec,
    mul_order,
    order_p_power_element,
)
from .periods import (
    PeriodSpec,
    PlotPoint,
    SupercharSpec,
    frame_batches,
    gaussian_period,
    gaussian_plot,
    gaussian_values,
    period_spec,
    superchar_spec,
    supercharacter_plot,
    supercharacter_value,
    supercharacter_values,
)
from .weyl import (
    LambdaSet,
    WeylInstance,
    alpha_vector,
    build_lambda,
    discrepancy_estimate,
    weyl_instance,
    weyl_sum_exact,
    weyl_sum_numeric,
)
from .cm import (
    FieldData,
    LatticeContext,
    OkElement,
    TorsionPoint,
    field_data,
    lattice_context,
    ok_element,
    ok_is_unit,
    ok_mul,
    ok_pow,
    prime_splitting,
    quotient_order,
    rcfp,
    rcfp_plot,
    rescale_to_disc,
    torsion_coordinate_plot,
    torsion_point,
    torsion_points,
    unit_group_order,
    weber,
    wp,
    wp_many,
    wp_prime,
)
from .render import (
    RenderStyle,
    ViewBox,
    auto_viewbox,
    make_palette,
    palette_color,
    render_scatter,
    render_style,
    save_png,
    write_frames,
)
from .pointio import (
    csv_header,
    meta_json,
    points_csv,
    read_meta,
    write_meta,
    write_points_csv,
)
