# Tests de retículos, Gabor, Wexler-Raz, funciones CE y CLI
