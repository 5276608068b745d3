"""Tests for the vted package."""
