"""Identity families and their evaluators; the table lives in ``registry``."""
