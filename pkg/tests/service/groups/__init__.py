"""Groups service tests package."""
