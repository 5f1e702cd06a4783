# Funciones de Cohn-Elkies a partir de ventanas duales de Gabor gaussianas
