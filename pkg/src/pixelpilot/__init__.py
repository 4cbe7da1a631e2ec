"""pixelpilot: text-conditioned behavior-cloned game agent at desk scale.

Synthetic egocentric environment -> trajectory datasets -> inverse-dynamics
action imputation -> text-conditioned policy with custom token layout and
masking -> realtime cached inference server with an operator console.
"""

__version__ = "0.1.0"
