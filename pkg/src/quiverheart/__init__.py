"""Hearts of cotorsion pairs over bound quiver algebras, computed exactly."""

__version__ = "0.1.0"
