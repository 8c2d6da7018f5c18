"""Typed decorated rooted trees: enumeration, pre-Lie and Hopf structures, morphisms and operads."""

from .linalg import LinComb, Tensor
from .trees import Alphabet, Forest, Tree, parse_forest, parse_tree, render_forest, render_tree

__all__ = ["Alphabet", "Forest", "LinComb", "Tensor", "Tree", "parse_forest", "parse_tree",
           "render_forest", "render_tree"]
__version__ = "0.1.0"
