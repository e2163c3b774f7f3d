"""demeterlint: strict class-form Law of Demeter checking for a Java subset.

The analyzer finds member accesses whose receiver's static type is outside
the accessing class's friend set, then applies layered adaptation rules that
widen friendship in attributable steps.
"""

__version__ = "0.1.0"
