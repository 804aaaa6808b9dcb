#!/usr/bin/env python3
"""Regenerates the transaction-log fixture and its expected basket matrix.

The expected matrix is computed here from first principles (group rows by
(client, date), sort products lexicographically, sort baskets by (date,
client)) so the C++ pipeline can be checked byte for byte against an
independent implementation. The basket plan below is explicit: one entry per
(client, date) basket, so the expected basket count is simply its length.
"""

import random
from pathlib import Path

HERE = Path(__file__).parent

PRODUCTS = {
    "Aceite vegetal 1L": ("Despensa", "Aceites", 2190),
    "Fideo vitaminizado 400g": ("Despensa", "Pastas", 690),
    "Arroz grado 2 1kg": ("Despensa", "Arroz", 1090),
    "Yogur batido frutilla": ("Lacteos", "Yogur", 250),
    "Bebida cola familiar 3L": ("Bebidas", "Gaseosas", 1890),
    "Bebida sabores familiar 3L": ("Bebidas", "Gaseosas", 1590),
    "Leche polvo descremada x 800g": ("Lacteos", "Leche", 2990),
    "Queso laminado granel 250g": ("Lacteos", "Queso", 1790),
    "Pan molde blanco 750g": ("Panaderia", "Pan", 1290),
    "Cloro tradicional 1L": ("Limpieza", "Cloro", 790),
}

# One entry per basket: (client, (day, month, year), purchased rows).
# Duplicate product rows inside a basket are deliberate; they must collapse
# to a single 1 in the vector.
PLAN = [
    ("429103", (3, 9, 2011), ["Aceite vegetal 1L", "Fideo vitaminizado 400g",
                              "Arroz grado 2 1kg", "Aceite vegetal 1L"]),
    ("429103", (17, 9, 2011), ["Yogur batido frutilla",
                               "Leche polvo descremada x 800g",
                               "Pan molde blanco 750g"]),
    ("508211", (3, 9, 2011), ["Bebida cola familiar 3L",
                              "Bebida sabores familiar 3L"]),
    ("508211", (24, 9, 2011), ["Aceite vegetal 1L",
                               "Fideo vitaminizado 400g",
                               "Arroz grado 2 1kg",
                               "Queso laminado granel 250g",
                               "Pan molde blanco 750g"]),
    ("615024", (5, 9, 2011), ["Yogur batido frutilla", "Aceite vegetal 1L",
                              "Leche polvo descremada x 800g",
                              "Leche polvo descremada x 800g"]),
    ("615024", (12, 10, 2011), ["Bebida cola familiar 3L",
                                "Bebida sabores familiar 3L",
                                "Pan molde blanco 750g",
                                "Cloro tradicional 1L"]),
    ("700388", (8, 9, 2011), ["Fideo vitaminizado 400g",
                              "Arroz grado 2 1kg"]),
    ("700388", (8, 10, 2011), ["Aceite vegetal 1L",
                               "Fideo vitaminizado 400g",
                               "Yogur batido frutilla",
                               "Arroz grado 2 1kg",
                               "Cloro tradicional 1L",
                               "Queso laminado granel 250g"]),
    ("812455", (21, 9, 2011), ["Pan molde blanco 750g",
                               "Queso laminado granel 250g",
                               "Leche polvo descremada x 800g"]),
    ("812455", (2, 10, 2011), ["Bebida cola familiar 3L",
                               "Pan molde blanco 750g",
                               "Bebida cola familiar 3L",
                               "Bebida sabores familiar 3L"]),
    ("903310", (29, 9, 2011), ["Aceite vegetal 1L", "Arroz grado 2 1kg",
                               "Fideo vitaminizado 400g",
                               "Pan molde blanco 750g",
                               "Leche polvo descremada x 800g",
                               "Yogur batido frutilla",
                               "Cloro tradicional 1L"]),
    ("903310", (30, 9, 2011), ["Yogur batido frutilla",
                               "Queso laminado granel 250g",
                               "Bebida cola familiar 3L",
                               "Aceite vegetal 1L",
                               "Fideo vitaminizado 400g",
                               "Bebida sabores familiar 3L"]),
]


def weekday_1_to_7(day, month, year):
    import datetime
    return datetime.date(year, month, day).isoweekday()


def chilean_price(value):
    text = str(value)
    if len(text) > 3:
        return text[:-3] + "." + text[-3:]
    return text


def make_transactions():
    rows = []
    for client, (day, month, year), products in PLAN:
        for product in products:
            category, subcategory, price = PRODUCTS[product]
            rows.append(";".join([
                client,
                f"{day}/{month:02d}/{year}",
                str(weekday_1_to_7(day, month, year)),
                str(month),
                str(year),
                category,
                subcategory,
                product,
                chilean_price(price),
            ]))
    random.Random(7).shuffle(rows)
    header = ("ID Cliente;Fecha Transacción;Dia;Mes;Año;Categoría;"
              "Sub-Categoría;Producto;Precio")
    return header + "\n" + "\n".join(rows) + "\n"


def make_expected_matrix():
    catalog = sorted(PRODUCTS)
    baskets = {}
    for client, (day, month, year), products in PLAN:
        key = ((year, month, day), client)
        baskets.setdefault(key, set()).update(products)
    lines = ["basket_id,client_id,date," + ",".join(catalog)]
    for basket_id, (key, products) in enumerate(sorted(baskets.items()), 1):
        (year, month, day), client = key
        bits = ["1" if name in products else "0" for name in catalog]
        lines.append(
            f"{basket_id},{client},{year:04d}-{month:02d}-{day:02d},"
            + ",".join(bits))
    return "\n".join(lines) + "\n"


def main():
    transactions = make_transactions()
    n_rows = transactions.count("\n") - 1
    assert n_rows == 50, f"fixture must have 50 data rows, has {n_rows}"
    (HERE / "transactions_50.csv").write_text(transactions, encoding="utf-8")
    (HERE / "expected_baskets_50.csv").write_text(make_expected_matrix(),
                                                  encoding="utf-8")
    print(f"rows: {n_rows}")
    print(f"baskets: {len(PLAN)}")
    months = sorted({(y, m) for _, (_, m, y), _ in PLAN})
    for year, month in months:
        count = sum(1 for _, (_, m, y), _ in PLAN if (y, m) == (year, month))
        print(f"  {year:04d}-{month:02d}: {count} baskets")


if __name__ == "__main__":
    main()
