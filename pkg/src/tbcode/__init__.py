"""Linear, embedded and task-based index codes over GF(2)."""

from .codes import Decoder, EmbeddedCode, IndexCode, Sender, TaskBasedCode, Verdict
from .errors import CapExceeded, TbcodeError
from .gf2 import BitMatrix, rank
from .graphs import Graph, complement
from .minrank import RepresentingMatrix, minrank_exact
from .peeters import generate
from .taskbased import tb_exact, tb_upper_dominating

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "CapExceeded",
    "Decoder",
    "EmbeddedCode",
    "Graph",
    "IndexCode",
    "RepresentingMatrix",
    "Sender",
    "TaskBasedCode",
    "TbcodeError",
    "Verdict",
    "complement",
    "generate",
    "minrank_exact",
    "rank",
    "tb_exact",
    "tb_upper_dominating",
]
