"""Which representations does a structure function admit, and where do its coherent states live?

Run: python3 demos/01_spectra.py
"""
from dbarg import (Affine, PolyProduct, QBracket, QLinear, classify, classify_all,
                   coherent_domain, reflect)
from dbarg.cli import describe_domain

examples = {
    "x": Affine(0.0),
    "[x], q=1.2": QBracket(1.2),
    "q^-x, q=0.5": QLinear.exponential(1.0, 0.5),
    "1/2 + 2^x": QLinear.shifted_exponential(0.5, 2.0),
    "1 - 2^-x": QLinear(lambda_minus=-1.0, const=1.0, q=2.0),
    "x(5-x)": PolyProduct((0.0, 5.0, -1.0)),
    "-x": reflect(Affine(0.0)),
    "x(x+1/2)": PolyProduct.from_roots([0.0, -0.5]),
}

print(f"{'psi':<14} {'spectrum':<14} {'labels':<10} domain of |z|^2")
for name, psi in examples.items():
    spec = classify(psi)
    labels = f"{spec.nu_minus if spec.nu_minus is not None else '-inf'}.." \
             f"{spec.nu_plus if spec.nu_plus is not None else 'inf'}"
    print(f"{name:<14} {spec.kind.value:<14} {labels:<10} {describe_domain(coherent_domain(psi, spec))}")

# A polynomial can carry more than one representation; classify() picks one,
# classify_all() lists them.
print("\nx(x+1/2) admits:", [s.kind.value for s in classify_all(examples["x(x+1/2)"])])
