// Simultaneous eigenvector of A_1, A_2 on the d = 3 quotient, q = 2.
#include <iostream>

#include <btq/btq.hpp>

int main() {
    using namespace btq;
    const Rational l1(5), l2(3, 2);
    auto ev = eigenvector_d3<Rational>(l1, l2, 2, 4);
    for (std::size_t u = 0; u < ev.graph.nodes.size(); ++u)
        std::cout << ev.graph.nodes[u].label.str() << "  " << to_string(*ev.f.values[u]) << "\n";
    std::cout << "eigen residual " << to_string(eigen_residual(ev.graph, ev.f, l1, l2)) << "\n";
}
