"""Test package for bcd-sat."""
