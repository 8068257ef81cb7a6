"""coreflect: exact computations with coreflective subcategories of
quiver representation categories.

The layers, bottom to top:

* :mod:`coreflect.exactla` -- exact dense linear algebra over Q and F_p;
* :mod:`coreflect.algebra` -- bound quiver algebras, projectives, covers;
* :mod:`coreflect.repcat` -- the abelian category of representations;
* :mod:`coreflect.trace` -- traces, Gen/Pres membership, canonical
  precovers;
* :mod:`coreflect.coreflectors` -- coreflectors onto Pres(U) and Gen(U)
  and the generic construction;
* :mod:`coreflect.checks` -- certificate-producing checkers with
  replayable witnesses;
* :mod:`coreflect.stable` -- syzygies and Hom modulo projectives;
* :mod:`coreflect.builtin`, :mod:`coreflect.fileio`,
  :mod:`coreflect.cli` -- examples, file formats and the command line.
"""

from .algebra import (
    Algebra,
    AlgebraSpec,
    NotFiniteDimensionalAtBound,
    Quiver,
    Relation,
    loewy_length,
    projective_cover,
    radical,
)
from .builtin import a2, glp, ksquare
from .checks import CheckReport, Witness, verify_witness
from .coreflectors import (
    CoreflectionResult,
    construct_coreflection_generic,
    coreflector_candidate,
    gen_coreflector,
    is_coreflection,
    verify_universal_property,
)
from .exactla import QQ, Field, Mat, Subspace
from .repcat import Mor, Rep, SampleSpec, SubRep, hom_basis
from .stable import stable_hom, syzygy
from .trace import USet, canonical_eps, in_gen, in_pres_canonical, pres_precover, trace2_sub, trace_sub

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "AlgebraSpec",
    "CheckReport",
    "CoreflectionResult",
    "Field",
    "Mat",
    "Mor",
    "NotFiniteDimensionalAtBound",
    "QQ",
    "Quiver",
    "Relation",
    "Rep",
    "SampleSpec",
    "SubRep",
    "Subspace",
    "USet",
    "Witness",
    "a2",
    "canonical_eps",
    "construct_coreflection_generic",
    "coreflector_candidate",
    "gen_coreflector",
    "glp",
    "hom_basis",
    "in_gen",
    "in_pres_canonical",
    "is_coreflection",
    "ksquare",
    "loewy_length",
    "pres_precover",
    "projective_cover",
    "radical",
    "stable_hom",
    "syzygy",
    "trace2_sub",
    "trace_sub",
    "verify_universal_property",
    "verify_witness",
]
