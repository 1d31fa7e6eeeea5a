# coding=utf-8
# corostab
# Copyright (C) 2026 The corostab developers
#
# This program is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more
# details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with this program. If not, see <http://www.gnu.org/licenses/>.

from ._info import __author__, __version__

from ._base import (
    CAUCHY,
    KIRCHHOFF,
    CauchyElasticLaw,
    Error,
    HyperelasticLaw,
    LawError,
    MaterialLaw,
    flavor,
    invariants,
    log_stretches)
from ._kinematics import (
    DeformationState,
    DomainExceeded,
    MotionPath,
    NonInvertible,
    NonPositiveDefinite,
    SpectralData,
    VelocityFields,
    edot_components,
    exp_sym,
    exponential_path,
    log_spd,
    probe_path,
    rotation_path,
    shear_path,
    spectral_decompose,
    sqrt_spd,
    strain_measures,
    stretch_path,
    superpose_rotation,
    velocity_fields)
from ._expressions import (
    EvalError,
    Expression,
    ExpressionError,
    LexError,
    ParseError,
    check_permutation_equivariance,
    evaluate,
    expand_components,
    format_expr,
    parse,
    parse_expression,
    tokenize)
from ._materials import (
    EquivarianceError,
    MaterialConfig,
    SchemaError,
    cauchy_nonhyper_law,
    check_law_equivariance,
    exp_hencky_law,
    gamma_to_principal_s2,
    hencky_law,
    law_from_config,
    law_from_expressions)
from ._stress import (
    StressState,
    cauchy_stress,
    first_pk,
    richter_cauchy,
    second_pk)
from ._rates import (
    CorotatedFrame,
    RateSample,
    corotated_frame,
    csp_pairing,
    csp_pairing_along,
    zj_rate,
    zj_rate_via_frame)
from ._quadforms import (
    LambdaMatrix,
    QuadFormBlocks,
    block_form_matrix,
    csp_form_matrix,
    full_form_value,
    lambda_matrix,
    qela_blocks,
    qhyp_blocks,
    qtau_blocks,
    quadform_blocks,
    tensorial_form_value,
    weighted_q1)
from ._conditions import (
    AuditReport,
    StabilityVerdict,
    Tolerances,
    check_be,
    check_tstsm_pair,
    check_tstsm_pp,
    csp_exact,
    csp_sampled,
    equivalence_audit,
    evaluate_state,
    line_integral_monotonicity)
from ._harness import (
    ScanConfig,
    ScanReport,
    load_material,
    read_report,
    read_scan_config,
    run_scan,
    write_report)
from ._verify import VerifyReport, run_verify
from ._util import default_jobs
