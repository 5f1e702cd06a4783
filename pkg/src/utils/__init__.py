# Utilidades: errores con código de salida, registro por consola y salida determinista
