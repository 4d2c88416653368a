# Инициализация пакета src
