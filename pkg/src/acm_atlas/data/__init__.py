"""Package data: built-in catalog and golden tables."""
