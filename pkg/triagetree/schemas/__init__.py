"""Pydantic schemas for parameters, reports and model documents"""
