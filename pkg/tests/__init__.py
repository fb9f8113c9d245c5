"""Tests for chainrank."""
