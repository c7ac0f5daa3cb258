"""Tests for mdsipm."""
