"""What the proof does not reveal.

Two takes on the hiding property: the same witness proved under two
masking seeds yields unrelated bytes of identical length, and a
simulator with no witness at all emits a proof the verifier accepts.
"""

from lumen import generate_relation, index, prove, simulate, verify, witness_poly
from lumen.groups import test_known_order_spec
from lumen.pcs import setup


def hamming(a: bytes, b: bytes) -> int:
    return sum(bin(x ^ y).count("1") for x, y in zip(a, b))


def main():
    pp = setup(128, 64, 4, b"demo-04", group=test_known_order_spec())
    enc = index(generate_relation(8, b"demo-04/relation"))
    f = witness_poly(pp, enc)

    a = prove(pp, enc, f, b"mask-seed-a").encode(pp)
    b = prove(pp, enc, f, b"mask-seed-b").encode(pp)
    print(f"two proofs of one witness: {len(a)} and {len(b)} bytes")
    bits = 8 * len(a)
    # shared public header fields (calibration, parameter and relation
    # digests) coincide; every masked field lands near a coin flip
    print(f"differing bits: {hamming(a, b)}/{bits} "
          f"({100 * hamming(a, b) / bits:.1f}%)")

    # the simulator never sees the witness, only public data and the
    # power to pick its own challenges; acceptance proves the verifier
    # learns nothing witness-specific
    sim = simulate(pp, enc, b"no-witness-here")
    ok, _ = verify(pp, enc, sim)
    print("simulated proof:", "accepted" if ok else "REJECTED")
    print(f"simulated length: {len(sim.encode(pp))} bytes "
          f"({'same' if len(sim.encode(pp)) == len(a) else 'DIFFERENT'} as real)")


if __name__ == "__main__":
    main()
