# Parabolic degrees, polygons and destabilization criteria
