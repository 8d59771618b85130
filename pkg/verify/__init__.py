"""Check catalogue engine behind ``polya verify-paper``."""
