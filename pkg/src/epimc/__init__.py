"""Model checking for multi-agent epistemic logic with distributed knowledge,
topic-based communication, public announcements and their quantified forms."""
from .bisim import (
    Partition,
    bisim_classes,
    bisim_witness,
    characteristic_topic,
    distinguishing_formula,
    is_bisimilar,
    is_witness,
    quotient,
)
from .errors import (
    ClosureError,
    EmptyDomainError,
    EmptyGroupError,
    EpimcError,
    InputError,
    NoDistinguisherError,
    ParseError,
    UnsupportedFragmentError,
)
from .global_mc import Labelling, global_mc, label_model
from .model import (
    KripkeModel,
    PointedModel,
    agreement_relation,
    disjoint_union,
    group_relation,
    load_model,
    model_size,
    validate,
)
from .qbf import QbfEncoding, QbfInstance, encode, eval_qbf, parse_qbf
from .quantified import (
    RestrictionEnumeration,
    check_quantified,
    enumerate_restrictions,
    restriction_witness,
    truthset_quantified,
)
from .semantics import eval_formula, truthset, valid_on_model
from .syntax import (
    FALSE,
    TRUE,
    And,
    ArbPartialComm,
    ArbPubAnn,
    Atom,
    D,
    Formula,
    Not,
    PartialComm,
    PubAnn,
    Top,
    formula_size,
    ordered_subformulas,
    parse_formula,
    print_formula,
)
from .translate import dgr, translate, translate_pa, translate_pc
from .updates import pa_edge_update, pa_world_update, partial_comm_update

__version__ = "0.1.0"

__all__ = [
    "agreement_relation",
    "And",
    "ArbPartialComm",
    "ArbPubAnn",
    "Atom",
    "bisim_classes",
    "bisim_witness",
    "characteristic_topic",
    "check_quantified",
    "ClosureError",
    "D",
    "dgr",
    "disjoint_union",
    "distinguishing_formula",
    "EmptyDomainError",
    "EmptyGroupError",
    "encode",
    "enumerate_restrictions",
    "EpimcError",
    "eval_formula",
    "eval_qbf",
    "FALSE",
    "Formula",
    "formula_size",
    "global_mc",
    "group_relation",
    "InputError",
    "is_bisimilar",
    "is_witness",
    "KripkeModel",
    "label_model",
    "Labelling",
    "load_model",
    "model_size",
    "NoDistinguisherError",
    "Not",
    "ordered_subformulas",
    "pa_edge_update",
    "pa_world_update",
    "parse_formula",
    "parse_qbf",
    "ParseError",
    "partial_comm_update",
    "PartialComm",
    "Partition",
    "PointedModel",
    "print_formula",
    "PubAnn",
    "QbfEncoding",
    "QbfInstance",
    "quotient",
    "restriction_witness",
    "RestrictionEnumeration",
    "Top",
    "translate",
    "translate_pa",
    "translate_pc",
    "TRUE",
    "truthset",
    "truthset_quantified",
    "UnsupportedFragmentError",
    "valid_on_model",
    "validate",
]
