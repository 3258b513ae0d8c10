# Rank-2 counting formula and its verification paths
