# Operator algebra, model modules and local descent on the formal disc
