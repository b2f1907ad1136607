from .graph import Graph  # noqa: F401
from .exact import QuadExt  # noqa: F401
from .descent import DescentMap, PellForm, descend_sequence, form_multiplier, decrease_factor  # noqa: F401
from .constructions import FigureKind, build_figure, verify_figure  # noqa: F401
