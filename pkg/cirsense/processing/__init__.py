"""Processing stages: profiles, filtering, geometry, heatmap and detection."""
