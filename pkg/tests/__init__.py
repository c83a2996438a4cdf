"""Test suite for the Waldschmidt bound engine"""
