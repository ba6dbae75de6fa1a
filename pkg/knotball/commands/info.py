"""`info`: f-vector, Euler characteristic, pseudomanifold status and homology."""

from knotball.commands.common import EXIT_PASS, Report, load_complex
from knotball.models.complex import f_vector, is_pseudomanifold
from knotball.models.schemas import ManifoldStatus
from knotball.services.algebra import homology


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("info", parents=parents, help="Describe a complex")
    parser.add_argument("file", help=".cplx file or catalog name")
    parser.set_defaults(handler=handle)


def handle(args, report: Report) -> int:
    C = load_complex(args.file)
    fv = f_vector(C)
    status = is_pseudomanifold(C) if C.is_pure else ManifoldStatus.NO
    report.add("dim", C.dim)
    report.add("pure", C.is_pure)
    report.add("facets", C.n_facets)
    report.add("vertices", C.n_vertices)
    report.add("f_vector", str(fv))
    report.add("euler_characteristic", fv.euler_characteristic)
    report.add("pseudomanifold", status.value)
    report.add("homology", str(homology(C)))
    return EXIT_PASS
