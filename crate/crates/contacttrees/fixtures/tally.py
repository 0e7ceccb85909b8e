"""Independent record tally for diary fixtures (no project code involved)."""
import csv
import json
import sys
from collections import Counter


def tally_json(path):
    doc = json.load(open(path))
    ego_of = {t["id"]: t["ego_id"] for t in doc["ties"]}
    ties = Counter(t["ego_id"] for t in doc["ties"])
    contacts = Counter(ego_of[c["tie_id"]] for c in doc["contacts"])
    return len(doc["egos"]), len(doc["ties"]), len(doc["contacts"]), dict(ties), dict(contacts)


def tally_csv(directory):
    egos = list(csv.DictReader(open(f"{directory}/egos.csv")))
    ties = list(csv.DictReader(open(f"{directory}/ties.csv")))
    contacts = list(csv.DictReader(open(f"{directory}/contacts.csv")))
    ego_of = {t["id"]: t["ego_id"] for t in ties}
    return (len(egos), len(ties), len(contacts),
            dict(Counter(t["ego_id"] for t in ties)),
            dict(Counter(ego_of[c["tie_id"]] for c in contacts)))


if __name__ == "__main__":
    for arg in sys.argv[1:]:
        print(arg, tally_json(arg) if arg.endswith(".json") else tally_csv(arg))
