# Characteristic-p digit arithmetic
