"""Unit tests for heterocut."""
