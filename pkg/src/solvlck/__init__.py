"""Invariant cohomology and LCK geometry of solvable Lie algebras, and OT algebras from number fields."""

from .cohomology import (CharacterWeight, ExactnessResult, betti, character_complex_dims,
                         is_weakly_completely_solvable, character_cohomology, trivial_character,
                         twisted_cohomology, twisted_differential, twisted_exactness)
from .errors import PipelineError, PreconditionError, SolvLckError, ValidationError
from .exterior import Form, basis, gram_matrix, wedge
from .lck import (INCONCLUSIVE, NO_VAISMAN, ComplexStructure, InvariantMetric, ObstructionCertificate,
                  complex_structure_from_pairs, formality_check, harmonic_basis, is_integrable, is_lcs,
                  lee_form, metric_from, nijenhuis, vaisman_obstruction)
from .lie import (LieAlgebra, MetaAbelianSplit, WeightBlock, abelian, build_meta_abelian, ce_differential,
                  derived_dim, direct_sum, heisenberg, inoue_s0, is_nilpotent, is_unimodular, new_lie_algebra,
                  semidirect, split_check)
from .ot import OTBuild, OTFieldData, build_ot, ot_algebra, ot_lck_form, run_pipeline
from .scalars import DEFAULT_TOL, RATIONAL, Field, approx

__all__ = [n for n in dir() if not n.startswith("_")]
