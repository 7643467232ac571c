// Scramble a diagonal lattice by GL_3(F_2[t]) and GL_3(O), then bring it back into T.
#include <iostream>

#include <btq/btq.hpp>

int main() {
    using namespace btq;
    const VertexLabel n({3, 1, 0});
    auto m = random_gamma(3, 2, 3, 11) * label_matrix(n, 2) * random_k(3, 2, 16, 12);
    auto v = vertex_normal_form(m);
    std::cout << "normal form " << v.basis.str() << "\n";
    auto r = reduce_to_T(v);
    std::cout << "label " << r.label.str() << "\nwitness " << r.witness.str() << "\n";
}
