"""End-to-end smoke run of the scheduling pipeline."""
