"""stablemaps: exact GIT stability, semistable reduction over DVRs, and
projective-bundle splitting types for degree-d rational self-maps of P^n."""

__version__ = "0.1.0"
