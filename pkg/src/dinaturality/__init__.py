"""Compositionality of dinatural transformations, computed on Petri nets.

The package is layered bottom-up:

``signature``
    variance lists, cospan types, pushouts and horizontal-composition types;
``petri``
    forward-backward conflict free nets and the token game;
``graphcat``
    nets with boundaries, gluing and discriminant functions;
``dinat``
    transformations, vertical and horizontal composition, witnesses;
``finset_oracle``
    brute-force semantics in finite sets;
``cli``
    the ``dinat`` command and its JSON documents.
"""

from .dinat import (
    Transformation,
    WitnessStep,
    WitnessTrace,
    decompose,
    hcompose,
    identity_of,
    make_atomic,
    vcompose,
    witness,
)
from .errors import DinatError
from .graphcat import (
    GCMorphism,
    GraphCospan,
    collapse,
    compose_gc,
    gc_identity,
    glue,
    iso_equal,
    skeleton,
    standard_graph,
)
from .petri import PetriNet, fire, m0, md, topo_fire
from .signature import (
    CospanType,
    Signature,
    canonical_form,
    hcomp_signature,
    permutation_equivalent,
    pushout_types,
)

__version__ = "0.1.0"

__all__ = [
    "CospanType", "DinatError", "GCMorphism", "GraphCospan", "PetriNet", "Signature",
    "Transformation", "WitnessStep", "WitnessTrace", "canonical_form", "collapse",
    "compose_gc", "decompose", "fire", "gc_identity", "glue", "hcomp_signature",
    "hcompose", "identity_of", "iso_equal", "m0", "make_atomic", "md",
    "permutation_equivalent", "pushout_types", "skeleton", "standard_graph",
    "topo_fire", "vcompose", "witness",
]
