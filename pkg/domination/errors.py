"""Exceptions du paquet ``domination``."""


class DominationError(Exception):
    """Base de toutes les erreurs du paquet"""


class GraphError(DominationError, ValueError):
    """Graphe invalide (boucle, arête dupliquée, ordre nul...)"""


class GraphFormatError(GraphError):
    """Erreur de lecture d'une liste d'arêtes, avec numéro de ligne"""

    def __init__(self, line_number, message):
        self.line_number = line_number
        super().__init__(f"Ligne {line_number} : {message}")


class VertexIndexError(DominationError, IndexError):
    """Indice de sommet hors de [0, n)"""


class WeightingError(DominationError, ValueError):
    """Pondération mal formée (longueur, poids hors de [0,1])"""


class ConstructionError(DominationError, ValueError):
    """Paramètres de construction invalides ou plafond dépassé"""


class TraceMismatchError(DominationError, ValueError):
    """La trace gloutonne ne correspond pas au graphe fourni"""


class BudgetExceededError(DominationError, RuntimeError):
    """Un budget (taille, temps, nombre de sommets) a été dépassé"""

    def __init__(self, budget, message):
        self.budget = budget
        super().__init__(f"Budget '{budget}' dépassé : {message}")


class CertificateError(DominationError, RuntimeError):
    """Un certificat n'a pas passé la re-vérification indépendante"""

    def __init__(self, constraint, message):
        self.constraint = constraint
        super().__init__(f"Contrainte violée ({constraint}) : {message}")
