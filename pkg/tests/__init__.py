"""Test suite for the DWBC toolkit."""
