"""
Configuration du projet, lue depuis le fichier .env à la racine
"""

import os
from dataclasses import dataclass, replace
from pathlib import Path

from dotenv import load_dotenv

# Charger les variables d'environnement depuis .env à la racine du projet
PROJECT_ROOT = Path(__file__).parent.parent
env_path = PROJECT_ROOT / '.env'
load_dotenv(env_path)


@dataclass(frozen=True)
class Settings:
    """Budgets et paramètres numériques partagés par les solveurs"""

    torus_vertex_cap: int = 100_000
    lp_vertex_cap: int = 512
    brute_force_vertex_cap: int = 30
    bnb_vertex_cap: int = 150
    bnb_time_limit: float = 60.0
    ln_digits: int = 50
    master_seed: int = 20240611
    results_dir: Path = PROJECT_ROOT / "Benchmark" / "resultats"
    log_level: str = "WARNING"

    def with_overrides(self, **overrides):
        """Retourne une copie où seules les valeurs non None sont remplacées"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _int(name, default):
    return int(os.environ.get(name, default))


def get_settings():
    """
    Construit les réglages à partir de l'environnement

    Returns:
        Settings: instantané immuable de la configuration
    """
    return Settings(
        torus_vertex_cap=_int('DOMINATION_TORUS_VERTEX_CAP', 100_000),
        lp_vertex_cap=_int('DOMINATION_LP_VERTEX_CAP', 512),
        brute_force_vertex_cap=_int('DOMINATION_BRUTE_FORCE_VERTEX_CAP', 30),
        bnb_vertex_cap=_int('DOMINATION_BNB_VERTEX_CAP', 150),
        bnb_time_limit=float(os.environ.get('DOMINATION_BNB_TIME_LIMIT', 60.0)),
        ln_digits=_int('DOMINATION_LN_DIGITS', 50),
        master_seed=_int('DOMINATION_MASTER_SEED', 20240611),
        results_dir=Path(os.environ.get('DOMINATION_RESULTS_DIR',
                                        PROJECT_ROOT / "Benchmark" / "resultats")),
        log_level=os.environ.get('DOMINATION_LOG_LEVEL', 'WARNING'),
    )
