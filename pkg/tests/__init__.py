"""Unit test package for acm-atlas."""
