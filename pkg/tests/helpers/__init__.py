"""Shared builders for the shadowlab tests."""
