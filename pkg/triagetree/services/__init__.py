"""Algorithms and experiment services"""
