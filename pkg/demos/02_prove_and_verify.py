"""Full argument lifecycle through the library API.

Generates a satisfiable relation, encodes it, proves knowledge of the
unique satisfying assignment, ships the proof as bytes, and verifies
the bytes. Ends with a one-byte corruption that must be refused.
"""

from lumen import generate_relation, index, prove, verify_bytes, witness_poly
from lumen.groups import test_known_order_spec
from lumen.pcs import setup


def main():
    pp = setup(128, 64, 4, b"demo-02", group=test_known_order_spec())
    rel = generate_relation(8, b"demo-02/relation")
    enc = index(rel)
    print(f"relation: n={rel.n} m={rel.m} sparsity budget k={rel.k}")

    f = witness_poly(pp, enc)
    proof = prove(pp, enc, f, b"demo-02/prove")
    blob = proof.encode(pp)
    print(f"proof: {len(blob)} bytes, calibration {proof.calibration.hex()}")

    ok, report = verify_bytes(pp, enc, blob)
    print("verify:", "accepted" if ok else "REJECTED")
    for name, bit in report.subchecks:
        print(f"  subcheck {name}: {'ok' if bit else 'FAIL'}")

    # flip one byte in the middle of the wire image
    broken = bytearray(blob)
    broken[len(broken) // 2] ^= 0x40
    ok2, report2 = verify_bytes(pp, enc, bytes(broken))
    print("corrupted byte:", "accepted (BUG)" if ok2 else "rejected, as it must be")
    if report2.structural_notes:
        print("  note:", report2.structural_notes[0])


if __name__ == "__main__":
    main()
