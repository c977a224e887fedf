#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import argparse
import os

from errors import CensusError
from models import CensusTable, table_from_csv, table_from_json


def load_table(path: str) -> CensusTable:
    """Lit une table de recensement, CSV ou JSON selon le premier caractère."""
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    if text.lstrip().startswith("{"):
        return table_from_json(text)
    return table_from_csv(text)


def inspect_census(path, trace=None, members=False):
    """
    Affiche l'en-tête d'une table de recensement et ses lignes par trace,
    ou une seule trace.

    Args:
        path (str): Chemin vers le fichier CSV ou JSON produit par `census`.
        trace (int, optional): Trace A à afficher seule.
        members (bool): Liste aussi les paramètres d de chaque trace.
    """
    if not os.path.exists(path):
        print(f"Erreur : Le fichier '{path}' n'a pas été trouvé.")
        return

    try:
        table = load_table(path)
    except (CensusError, ValueError) as e:
        print(f"\nErreur de lecture : {e}")
        print(f"Le fichier '{path}' n'est peut-être pas une table de recensement valide.")
        return

    print(f"--- Recensement : {os.path.basename(path)} ---")
    print(f"Corps : {table.field} (q = {table.q}), format {table.format_version}")
    print(f"Paramètres : {sum(r.n for r in table.records)}, classes de traces : {len(table.records)}")

    records = table.records
    if trace is not None:
        records = [r for r in records if r.trace == trace]
        if not records:
            print(f"\nAucun paramètre de trace A = {trace}.")
            return

    print(f"\n  {'A':>6} {'N':>8} {'N_n2':>8} {'N_2n4':>8} {'N_4':>8}")
    print(f"  {'-' * 6:>6} {'-' * 8:>8} {'-' * 8:>8} {'-' * 8:>8} {'-' * 8:>8}")
    for r in records:
        print(f"  {r.trace:>6} {r.n:>8} {r.n_n2:>8} {r.n_2n4:>8} {r.n_4:>8}")
        if members:
            print(f"         d : {', '.join(r.d_values)}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Inspecte une table de recensement (CSV ou JSON).")
    parser.add_argument("path", help="Chemin vers la table produite par 'census'.")
    parser.add_argument("--trace", type=int, help="N'affiche que la trace A.")
    parser.add_argument("--members", action="store_true", help="Liste les paramètres d de chaque trace.")

    args = parser.parse_args()
    inspect_census(args.path, args.trace, args.members)
