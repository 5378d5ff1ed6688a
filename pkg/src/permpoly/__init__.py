"""permpoly: permutations of prime fields built from shifts and inversions.

The package studies the permutations of F_p = {0, ..., p-1} generated by
the shift x -> x+1 and the zero-fixing inversion x -> x**(p-2), and the
nested "shift, invert, shift, ..." forms they compose into:

- ``ffield``     exact arithmetic in F_p and its quadratic extension;
- ``perm``       permutations, cycle text, power maps, interpolation;
- ``grouptools`` stabilizer chains, group orders, generation verdicts;
- ``carlitz``    shift/invert words, nested forms, rank search;
- ``moebius``    the 2x2-matrix shadow of a form, poles, nonlinearity
                 measures;
- ``fibonacci``  zero indices of the two-term recurrence and the cycle
                 structure of inversion iterates;
- ``treelab``    exhaustive and sampled orbit statistics over trees of
                 forms;
- ``cli``        the ``permpoly`` command.
"""

__version__ = "0.1.0"

from .carlitz import (INVERT, DEFAULT_ROW_BUDGET, CarlitzForm, RankResult,
                      ShiftInvertWord, carlitz_rank,
                      double_transposition_word, iter_form_layers,
                      weak_carlitz_rank, word_to_form)
from .ffield import (FieldElement, PrimeModulus, QuadExtElement, as_modulus,
                     inv_mod, is_odd_prime, legendre, modulus, mult_order,
                     quad_order, sqrt_mod)
from .fibonacci import (FibCycleReport, FibSequence, fib_eval,
                        fib_matrix_power, fixed_point_converse,
                        iterate_check, min_zero_index, ratio_order)
from .grouptools import (GenerationVerdict, StabilizerChain, build_chain,
                         contains, coset_count, count_distinct_power_perms,
                         group_order, verify_generation)
from .moebius import (AlphaLinearCheck, MeasureReport, PoleSet, ProjMatrix,
                      a_linear_count, agreement_count,
                      check_alpha_linear_uniqueness, form_to_matrix,
                      linearity, measures, moebius_apply, pole_set)
from .perm import (CycleDecomposition, FieldPolynomial, Permutation,
                   PowerShiftMap, compose_in_order, decompose, inversion_perm,
                   negation_perm, parse_cycles, poly_perm, shift_perm,
                   to_polynomial)
from .treelab import (CSV_HEADER, DEFAULT_LEAF_BUDGET, LEAF_CONVENTION,
                      PERM_TYPES, RNG_ID, ExperimentRecord, TestResult,
                      TreePath, csv_row, exhaustive_bit_pair,
                      exhaustive_bits, exhaustive_experiment, leaf_perm,
                      proportion_test, runs_test, same_cycle,
                      sample_path_bits, sample_paths, tree_records)

__all__ = [
    "__version__",
    # ffield
    "PrimeModulus", "FieldElement", "QuadExtElement", "modulus",
    "as_modulus", "inv_mod", "sqrt_mod", "legendre", "mult_order",
    "quad_order", "is_odd_prime",
    # perm
    "Permutation", "CycleDecomposition", "decompose", "parse_cycles",
    "PowerShiftMap", "poly_perm", "shift_perm", "inversion_perm",
    "negation_perm", "compose_in_order", "FieldPolynomial", "to_polynomial",
    # grouptools
    "StabilizerChain", "build_chain", "group_order", "contains",
    "GenerationVerdict", "verify_generation", "count_distinct_power_perms",
    "coset_count",
    # carlitz
    "INVERT", "ShiftInvertWord", "double_transposition_word", "CarlitzForm",
    "word_to_form", "RankResult", "carlitz_rank", "weak_carlitz_rank",
    "iter_form_layers", "DEFAULT_ROW_BUDGET",
    # moebius
    "ProjMatrix", "moebius_apply", "form_to_matrix", "PoleSet", "pole_set",
    "agreement_count", "a_linear_count", "linearity", "MeasureReport",
    "measures", "AlphaLinearCheck", "check_alpha_linear_uniqueness",
    # fibonacci
    "FibSequence", "fib_eval", "fib_matrix_power", "min_zero_index",
    "ratio_order", "FibCycleReport", "iterate_check", "fixed_point_converse",
    # treelab
    "TreePath", "leaf_perm", "same_cycle", "exhaustive_bit_pair",
    "exhaustive_bits", "exhaustive_experiment", "sample_path_bits",
    "sample_paths", "tree_records", "ExperimentRecord", "TestResult",
    "proportion_test", "runs_test", "csv_row", "CSV_HEADER",
    "LEAF_CONVENTION", "RNG_ID",
    "PERM_TYPES", "DEFAULT_LEAF_BUDGET",
]
