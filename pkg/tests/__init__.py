"""heterocut test suite."""
