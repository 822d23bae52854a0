"""Heights, Kummer ramification and height-gap certificates for number fields."""

__version__ = "0.1.0"
