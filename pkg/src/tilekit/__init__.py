"""tilekit (under construction)."""
