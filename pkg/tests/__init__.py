"""Test suite for the bettisect package."""
