"""Graph products of groups: normal forms, window enumeration and rapid-decay checks.

Elements are passed as strings of whitespace-separated ``v<vertex>:<element>``
syllables; the identity is the empty string.
"""

from ._graphprod import Error, ParseError, PreconditionError, Workbench, tensor_norm

__all__ = ["Error", "ParseError", "PreconditionError", "Workbench", "tensor_norm"]
