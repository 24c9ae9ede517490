// Walks through the small two-facet model: evaluation, the undefined-to-true
// transformation, bisimulation, and the translation to a partial epistemic model.

#include <glocal/glocal.hpp>

#include <iostream>

using namespace glocal;

int main() {
    SimplicialModel c = simplicial_fixture("fig1.C");
    SimplicialModel cp = simplicial_fixture("fig1.Cp");
    FacetId x = c.point("X"), y = c.point("Y"), yp = cp.point("Yp");

    for (const char* text : {"p@c", "<a> p@c", "[a] p@c", "<c> p@a"}) {
        Formula f = parse(text);
        std::cout << "C, X  " << print(f) << "  ->  " << eval(c, x, f) << "\n";
    }

    Formula f = parse("p@c");
    Formula g = transform(c, x, f);
    std::cout << "transform of " << print(f) << " at X: " << print(g) << " (" << eval(c, x, g) << " at X)\n";

    std::cout << "(C,Y) and (C',Y') bisimilar: " << std::boolalpha << bisimilar(c, y, cp, yp) << "\n";
    Formula d = distinguish(c, y, cp, yp);
    std::cout << "distinguishing formula: " << print(d) << "  (" << eval(c, y, d) << " / " << eval(cp, yp, d)
              << ")\n";

    KappaResult k = kappa(c);
    std::cout << "kappa(C) has " << k.model.state_count() << " states; <a> p@c at X: "
              << eval_kripke(k.model, k.state_of_facet[x.value], parse("<a> p@c")) << "\n";
}
