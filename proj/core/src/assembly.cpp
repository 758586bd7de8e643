#include "vdns/assembly.hpp"

#include <stdexcept>

namespace vdns {

namespace {

struct BasisTable {
    int nloc = 0;
    std::vector<double> values;  // [q*nloc + i]
    std::vector<Vec2> ref_grads;
};

BasisTable tabulate(ElementKind kind, const QuadratureRule& rule) {
    BasisTable t;
    t.nloc = local_dof_count(kind);
    t.values.resize(static_cast<std::size_t>(rule.size()) * t.nloc);
    t.ref_grads.resize(t.values.size());
    for (int q = 0; q < rule.size(); ++q)
        eval_reference_basis(kind, rule.points[q],
                             {t.values.data() + static_cast<std::size_t>(q) * t.nloc,
                              static_cast<std::size_t>(t.nloc)},
                             {t.ref_grads.data() + static_cast<std::size_t>(q) * t.nloc,
                              static_cast<std::size_t>(t.nloc)});
    return t;
}

// Affine map data of a straight triangle: J columns are the edge vectors.
struct ElementMap {
    Mat2 jinv_t;
    double area;
};

ElementMap element_map(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    const Vec2& a = mesh.vertices[tri[0]];
    Mat2 j;
    j.col(0) = mesh.vertices[tri[1]] - a;
    j.col(1) = mesh.vertices[tri[2]] - a;
    ElementMap m;
    m.area = 0.5 * j.determinant();
    m.jinv_t = j.inverse().transpose();
    return m;
}

Vec2 physical_point(const Mesh& mesh, int t, const std::array<double, 3>& bary) {
    const auto& tri = mesh.triangles[t];
    return bary[0] * mesh.vertices[tri[0]] + bary[1] * mesh.vertices[tri[1]] +
           bary[2] * mesh.vertices[tri[2]];
}

// Shared traversal state for matrix and vector assembly.
struct Traversal {
    const Mesh* mesh;
    const QuadratureRule* rule;
    BasisTable p1, p2;
    bool need_p1 = false, need_p2 = false;
    std::vector<Vec2> p1_phys, p2_phys;  // physical gradients for current element
    std::vector<const Field*> coeffs;
    std::vector<FieldSampler> samplers;
    std::vector<CoeffSample> coeff_samples;

    Traversal(const Mesh& m, const QuadratureRule& r, std::span<const Field* const> coefficients)
        : mesh(&m), rule(&r) {
        for (const Field* f : coefficients) {
            if (!f || !f->space) throw std::invalid_argument("assembly: null coefficient field");
            if (f->space->mesh != &m)
                throw std::invalid_argument("assembly: coefficient field on a different mesh");
            coeffs.push_back(f);
            samplers.emplace_back(*f, r);
        }
        coeff_samples.resize(coeffs.size());
    }

    void require(ElementKind kind) {
        if (kind == ElementKind::P1 && !need_p1) {
            need_p1 = true;
            p1 = tabulate(ElementKind::P1, *rule);
            p1_phys.resize(p1.values.size());
        }
        if (kind == ElementKind::P2 && !need_p2) {
            need_p2 = true;
            p2 = tabulate(ElementKind::P2, *rule);
            p2_phys.resize(p2.values.size());
        }
    }

    const BasisTable& table(ElementKind kind) const {
        return kind == ElementKind::P1 ? p1 : p2;
    }
    const std::vector<Vec2>& phys(ElementKind kind) const {
        return kind == ElementKind::P1 ? p1_phys : p2_phys;
    }

    void bind(int t, const Mat2& jinv_t) {
        if (need_p1)
            for (std::size_t k = 0; k < p1.ref_grads.size(); ++k)
                p1_phys[k] = jinv_t * p1.ref_grads[k];
        if (need_p2)
            for (std::size_t k = 0; k < p2.ref_grads.size(); ++k)
                p2_phys[k] = jinv_t * p2.ref_grads[k];
        for (auto& s : samplers) s.bind(t);
    }

    void sample_coefficients(int q) {
        for (std::size_t c = 0; c < coeffs.size(); ++c) {
            CoeffSample& out = coeff_samples[c];
            const FunctionSpace& sp = *coeffs[c]->space;
            out.components = sp.components;
            if (sp.components == 1) {
                out.value[0] = samplers[c].value(q);
                out.gradient[0] = samplers[c].gradient(q);
            } else {
                const Vec2 v = samplers[c].vector_value(q);
                const Mat2 g = samplers[c].vector_gradient(q);
                out.value[0] = v[0];
                out.value[1] = v[1];
                out.gradient[0] = g.row(0).transpose();
                out.gradient[1] = g.row(1).transpose();
            }
        }
    }
};

}  // namespace

SparseMatrix assemble_form(const FunctionSpace& trial, const FunctionSpace& test,
                           const MatrixKernel& kernel, const QuadratureRule& rule,
                           std::span<const Field* const> coefficients) {
    if (trial.mesh != test.mesh)
        throw std::invalid_argument("assemble_form: trial and test spaces on different meshes");
    const Mesh& mesh = *trial.mesh;

    Traversal tr(mesh, rule, coefficients);
    tr.require(trial.element);
    tr.require(test.element);

    const int n_trial = trial.dofs_per_element;
    const int n_test = test.dofs_per_element;
    const int ns_trial = trial.scalar_dofs_per_element();
    const int ns_test = test.scalar_dofs_per_element();

    Eigen::MatrixXd local(n_test, n_trial);
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(mesh.triangle_count()) * n_test * n_trial);

    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const ElementMap map = element_map(mesh, t);
        tr.bind(t, map.jinv_t);
        local.setZero();

        for (int q = 0; q < rule.size(); ++q) {
            tr.sample_coefficients(q);
            QuadPoint qp;
            qp.x = physical_point(mesh, t, rule.points[q]);
            qp.w = rule.weights[q] * map.area;
            const BasisTable& bt_trial = tr.table(trial.element);
            const BasisTable& bt_test = tr.table(test.element);
            qp.trial = {bt_trial.values.data() + static_cast<std::size_t>(q) * ns_trial,
                        static_cast<std::size_t>(ns_trial)};
            qp.trial_grad = {tr.phys(trial.element).data() + static_cast<std::size_t>(q) * ns_trial,
                             static_cast<std::size_t>(ns_trial)};
            qp.test = {bt_test.values.data() + static_cast<std::size_t>(q) * ns_test,
                       static_cast<std::size_t>(ns_test)};
            qp.test_grad = {tr.phys(test.element).data() + static_cast<std::size_t>(q) * ns_test,
                            static_cast<std::size_t>(ns_test)};
            qp.coeff = tr.coeff_samples;
            kernel(qp, local);
            if (local.rows() != n_test || local.cols() != n_trial)
                throw std::runtime_error("assemble_form: kernel resized the local matrix");
        }

        const auto rows = test.element_dof_map(t);
        const auto cols = trial.element_dof_map(t);
        for (int i = 0; i < n_test; ++i)
            for (int j = 0; j < n_trial; ++j)
                triplets.emplace_back(rows[i], cols[j], local(i, j));
    }

    return matrix_from_triplets(test.dof_count, trial.dof_count, triplets);
}

Eigen::VectorXd assemble_functional(const FunctionSpace& test, const VectorKernel& kernel,
                                    const QuadratureRule& rule,
                                    std::span<const Field* const> coefficients) {
    const Mesh& mesh = *test.mesh;
    Traversal tr(mesh, rule, coefficients);
    tr.require(test.element);

    const int n_test = test.dofs_per_element;
    const int ns_test = test.scalar_dofs_per_element();

    Eigen::VectorXd result = Eigen::VectorXd::Zero(test.dof_count);
    Eigen::VectorXd local(n_test);

    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const ElementMap map = element_map(mesh, t);
        tr.bind(t, map.jinv_t);
        local.setZero();

        for (int q = 0; q < rule.size(); ++q) {
            tr.sample_coefficients(q);
            QuadPoint qp;
            qp.x = physical_point(mesh, t, rule.points[q]);
            qp.w = rule.weights[q] * map.area;
            const BasisTable& bt = tr.table(test.element);
            qp.test = {bt.values.data() + static_cast<std::size_t>(q) * ns_test,
                       static_cast<std::size_t>(ns_test)};
            qp.test_grad = {tr.phys(test.element).data() + static_cast<std::size_t>(q) * ns_test,
                            static_cast<std::size_t>(ns_test)};
            qp.coeff = tr.coeff_samples;
            kernel(qp, local);
            if (local.size() != n_test)
                throw std::runtime_error("assemble_functional: kernel resized the local vector");
        }

        const auto rows = test.element_dof_map(t);
        for (int i = 0; i < n_test; ++i) result[rows[i]] += local[i];
    }
    return result;
}

double integrate(const Mesh& mesh, const QuadratureRule& rule,
                 const std::function<double(const Vec2&)>& f) {
    double sum = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double area = mesh.triangle_area(t);
        for (int q = 0; q < rule.size(); ++q)
            sum += rule.weights[q] * area * f(physical_point(mesh, t, rule.points[q]));
    }
    return sum;
}

FieldSampler::FieldSampler(const Field& field, const QuadratureRule& rule)
    : field_(&field), space_(field.space), rule_(&rule) {
    if (!space_) throw std::invalid_argument("FieldSampler: field without a space");
    nloc_ = space_->scalar_dofs_per_element();
    ref_values_.resize(static_cast<std::size_t>(rule.size()) * nloc_);
    ref_grads_.resize(ref_values_.size());
    for (int q = 0; q < rule.size(); ++q)
        eval_reference_basis(space_->element, rule.points[q],
                             {ref_values_.data() + static_cast<std::size_t>(q) * nloc_,
                              static_cast<std::size_t>(nloc_)},
                             {ref_grads_.data() + static_cast<std::size_t>(q) * nloc_,
                              static_cast<std::size_t>(nloc_)});
    local_.resize(static_cast<std::size_t>(space_->components) * nloc_);
}

void FieldSampler::bind(int triangle) {
    const Mesh& mesh = *space_->mesh;
    const auto& tri = mesh.triangles[triangle];
    Mat2 j;
    j.col(0) = mesh.vertices[tri[1]] - mesh.vertices[tri[0]];
    j.col(1) = mesh.vertices[tri[2]] - mesh.vertices[tri[0]];
    jinv_t_ = j.inverse().transpose();
    const auto dofs = space_->element_dof_map(triangle);
    for (std::size_t k = 0; k < local_.size(); ++k)
        local_[k] = field_->coefficients[dofs[k]];
}

double FieldSampler::value(int q) const {
    const double* v = ref_values_.data() + static_cast<std::size_t>(q) * nloc_;
    double s = 0.0;
    for (int i = 0; i < nloc_; ++i) s += local_[i] * v[i];
    return s;
}

Vec2 FieldSampler::gradient(int q) const {
    const Vec2* g = ref_grads_.data() + static_cast<std::size_t>(q) * nloc_;
    Vec2 s = Vec2::Zero();
    for (int i = 0; i < nloc_; ++i) s += local_[i] * g[i];
    return jinv_t_ * s;
}

Vec2 FieldSampler::vector_value(int q) const {
    const double* v = ref_values_.data() + static_cast<std::size_t>(q) * nloc_;
    Vec2 s = Vec2::Zero();
    for (int i = 0; i < nloc_; ++i) {
        s[0] += local_[i] * v[i];
        s[1] += local_[nloc_ + i] * v[i];
    }
    return s;
}

Mat2 FieldSampler::vector_gradient(int q) const {
    const Vec2* g = ref_grads_.data() + static_cast<std::size_t>(q) * nloc_;
    Vec2 gx = Vec2::Zero(), gy = Vec2::Zero();
    for (int i = 0; i < nloc_; ++i) {
        gx += local_[i] * g[i];
        gy += local_[nloc_ + i] * g[i];
    }
    Mat2 out;
    out.row(0) = (jinv_t_ * gx).transpose();
    out.row(1) = (jinv_t_ * gy).transpose();
    return out;
}

}  // namespace vdns
