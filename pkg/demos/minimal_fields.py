"""Walk through the stored minimal fields: discriminants, signatures, group verdicts."""

from fieldforge.fielddb import FIXTURES
from fieldforge.galois import identify
from fieldforge.orders import field_discriminant

for name, f in FIXTURES.items():
    inv = field_discriminant(f)
    cert = identify(f)
    print(f"{name:6} {f}")
    print(f"       disc {inv.field_disc}  signature {tuple(inv.signature)}  group {cert.verdict} ({cert.level})")
