#include "qhist/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace qhist {

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exponential: not square");
    const Eigen::Index n = a.rows();
    using Mat = Eigen::MatrixXcd;
    // Higham's degree-13 Pade coefficients.
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const double theta13 = 5.371920351148152;
    double nrm = a.cwiseAbs().colwise().sum().maxCoeff(); // 1-norm
    int squarings = 0;
    Mat as = a;
    if (nrm > theta13) {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / theta13))));
        as /= std::pow(2.0, squarings);
    }
    Mat a2 = as * as;
    Mat a4 = a2 * a2;
    Mat a6 = a2 * a4;
    Mat id = Mat::Identity(n, n);
    Mat u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                  b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
            b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    Mat r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

Operator rotation_hamiltonian(const SpacePtr& space,
                              const std::vector<std::pair<StateVector, StateVector>>& pairs,
                              double duration) {
    if (duration <= 0.0) throw std::invalid_argument("rotation_hamiltonian: duration must be positive");
    std::vector<RotationPair> rp;
    rp.reserve(pairs.size());
    for (const auto& [s, t] : pairs) {
        require_same_space(space, s.space(), "rotation_hamiltonian");
        require_same_space(space, t.space(), "rotation_hamiltonian");
        rp.push_back({s.amplitudes(), t.amplitudes(), M_PI / 2.0});
    }
    Segment seg = Segment::rotation(0.0, duration, space, std::move(rp));
    return seg.hamiltonian();
}

Segment Segment::rotation(double t_start, double t_end, SpacePtr space,
                          std::vector<RotationPair> pairs) {
    if (!(t_end > t_start)) throw std::invalid_argument("Segment: t_end must exceed t_start");
    for (const auto& p : pairs) {
        if (p.source.size() != space->total_dim() || p.target.size() != space->total_dim())
            throw std::invalid_argument("Segment::rotation: pair vector length mismatch");
        if (std::abs(p.source.squaredNorm() - 1.0) > 1e-10 ||
            std::abs(p.target.squaredNorm() - 1.0) > 1e-10)
            throw std::invalid_argument("Segment::rotation: pair vectors must be normalized");
        if (std::abs(p.source.dot(p.target)) > 1e-10)
            throw std::invalid_argument("Segment::rotation: source and target must be orthogonal");
    }
    Segment seg;
    seg.kind_ = Kind::Rotation;
    seg.t0_ = t_start;
    seg.t1_ = t_end;
    seg.space_ = std::move(space);
    seg.pairs_ = std::move(pairs);
    seg.pack();
    return seg;
}

Segment Segment::idle(double t_start, double t_end, SpacePtr space) {
    if (!(t_end > t_start)) throw std::invalid_argument("Segment: t_end must exceed t_start");
    Segment seg;
    seg.kind_ = Kind::Idle;
    seg.t0_ = t_start;
    seg.t1_ = t_end;
    seg.space_ = std::move(space);
    return seg;
}

Segment Segment::generic(double t_start, double t_end, Operator h) {
    if (!(t_end > t_start)) throw std::invalid_argument("Segment: t_end must exceed t_start");
    if (h.hermiticity_deviation() > 1e-10)
        throw std::invalid_argument("Segment::generic: Hamiltonian is not Hermitian");
    Segment seg;
    seg.kind_ = Kind::Generic;
    seg.t0_ = t_start;
    seg.t1_ = t_end;
    seg.space_ = h.space();
    seg.generic_h_ = std::move(h);
    return seg;
}

void Segment::pack() {
    packed_.clear();
    packed_.reserve(pairs_.size());
    for (const auto& p : pairs_) {
        Packed pk;
        pk.rate = p.angle / duration();
        for (Eigen::Index i = 0; i < p.source.size(); ++i) {
            if (p.source(i) != cd(0.0, 0.0)) { pk.si.push_back(i); pk.sv.push_back(p.source(i)); }
            if (p.target(i) != cd(0.0, 0.0)) { pk.ti.push_back(i); pk.tv.push_back(p.target(i)); }
        }
        packed_.push_back(std::move(pk));
    }
}

void Segment::check_times(double ta, double tb) const {
    if (ta < t0_ - 1e-9 || tb > t1_ + 1e-9 || ta > tb + 1e-12)
        throw std::invalid_argument("Segment: times outside segment");
}

namespace {

Eigen::MatrixXcd pair_generator_block(double rate) {
    Eigen::MatrixXcd m(2, 2);
    m << cd(0, 0), cd(0, -rate), cd(0, rate), cd(0, 0);
    return m;
}

SparseCd pair_basis(const SpacePtr& space, const RotationPair& p) {
    SparseCd basis(space->total_dim(), 2);
    std::vector<Eigen::Triplet<cd>> trips;
    for (Eigen::Index i = 0; i < p.source.size(); ++i) {
        if (p.source(i) != cd(0.0, 0.0)) trips.emplace_back(i, 0, p.source(i));
        if (p.target(i) != cd(0.0, 0.0)) trips.emplace_back(i, 1, p.target(i));
    }
    basis.setFromTriplets(trips.begin(), trips.end());
    return basis;
}

} // namespace

Operator Segment::hamiltonian() const {
    switch (kind_) {
        case Kind::Idle: return Operator::zero(space_);
        case Kind::Generic: return *generic_h_;
        case Kind::Rotation: break;
    }
    std::vector<OperatorBlock> blocks;
    blocks.reserve(pairs_.size());
    for (const auto& p : pairs_)
        blocks.push_back({pair_basis(space_, p), pair_generator_block(p.angle / duration())});
    return Operator::block_sum(space_, std::move(blocks), Complement::Zero);
}

Operator Segment::propagator(double ta, double tb) const {
    check_times(ta, tb);
    const double dt = tb - ta;
    switch (kind_) {
        case Kind::Idle: return Operator::identity(space_);
        case Kind::Generic: {
            Eigen::MatrixXcd h = generic_h_->materialize();
            return Operator::dense(space_, matrix_exponential(cd(0.0, -1.0) * dt * h));
        }
        case Kind::Rotation: break;
    }
    std::vector<OperatorBlock> blocks;
    blocks.reserve(pairs_.size());
    for (const auto& p : pairs_) {
        double phi = p.angle * dt / duration();
        Eigen::MatrixXcd u(2, 2);
        u << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
        blocks.push_back({pair_basis(space_, p), std::move(u)});
    }
    return Operator::block_sum(space_, std::move(blocks), Complement::Identity);
}

void Segment::apply_propagator(Eigen::VectorXcd& v, double ta, double tb) const {
    check_times(ta, tb);
    if (kind_ == Kind::Idle) return;
    const double dt = tb - ta;
    if (dt <= 0.0) return;
    if (kind_ == Kind::Generic) {
        Eigen::MatrixXcd h = generic_h_->materialize();
        v = matrix_exponential(cd(0.0, -1.0) * dt * h) * v;
        return;
    }
    for (const auto& pk : packed_) {
        cd a(0, 0), b(0, 0);
        for (std::size_t m = 0; m < pk.si.size(); ++m) a += std::conj(pk.sv[m]) * v(pk.si[m]);
        for (std::size_t m = 0; m < pk.ti.size(); ++m) b += std::conj(pk.tv[m]) * v(pk.ti[m]);
        const double phi = pk.rate * dt;
        const double c = std::cos(phi), sn = std::sin(phi);
        const cd ds = (c - 1.0) * a - sn * b;
        const cd dt2 = sn * a + (c - 1.0) * b;
        for (std::size_t m = 0; m < pk.si.size(); ++m) v(pk.si[m]) += pk.sv[m] * ds;
        for (std::size_t m = 0; m < pk.ti.size(); ++m) v(pk.ti[m]) += pk.tv[m] * dt2;
    }
}

void Segment::apply_hamiltonian(const Eigen::VectorXcd& v, Eigen::VectorXcd& out) const {
    out.setZero(v.size());
    if (kind_ == Kind::Idle) return;
    if (kind_ == Kind::Generic) {
        out = generic_h_->apply(v);
        return;
    }
    for (const auto& pk : packed_) {
        cd a(0, 0), b(0, 0);
        for (std::size_t m = 0; m < pk.si.size(); ++m) a += std::conj(pk.sv[m]) * v(pk.si[m]);
        for (std::size_t m = 0; m < pk.ti.size(); ++m) b += std::conj(pk.tv[m]) * v(pk.ti[m]);
        const cd ct = cd(0, pk.rate) * a;  // onto target
        const cd cs = cd(0, -pk.rate) * b; // onto source
        for (std::size_t m = 0; m < pk.ti.size(); ++m) out(pk.ti[m]) += pk.tv[m] * ct;
        for (std::size_t m = 0; m < pk.si.size(); ++m) out(pk.si[m]) += pk.sv[m] * cs;
    }
}

EvolutionSchedule::EvolutionSchedule(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw std::invalid_argument("EvolutionSchedule: no segments");
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        if (std::abs(segments_[i].t_start() - segments_[i - 1].t_end()) > 1e-9)
            throw std::invalid_argument("EvolutionSchedule: segments not contiguous");
        require_same_space(segments_[i].space(), segments_[0].space(), "EvolutionSchedule");
    }
}

std::size_t EvolutionSchedule::segment_index_at(double t) const {
    if (t < t_begin() - 1e-9 || t > t_end() + 1e-9)
        throw std::invalid_argument("EvolutionSchedule: time outside schedule");
    for (std::size_t i = 0; i < segments_.size(); ++i)
        if (t < segments_[i].t_end() - 1e-12) return i;
    return segments_.size() - 1;
}

void EvolutionSchedule::evolve_in_place(Eigen::VectorXcd& v, double ta, double tb) const {
    if (tb < ta - 1e-12) throw std::invalid_argument("EvolutionSchedule::evolve: tb < ta");
    if (ta < t_begin() - 1e-9 || tb > t_end() + 1e-9)
        throw std::invalid_argument("EvolutionSchedule::evolve: times outside schedule");
    double t = ta;
    while (tb - t > 1e-12) {
        const Segment& seg = segments_[segment_index_at(t)];
        double te = std::min(seg.t_end(), tb);
        seg.apply_propagator(v, t, te);
        t = te;
    }
}

StateVector EvolutionSchedule::evolve(const StateVector& psi, double ta, double tb) const {
    require_same_space(space(), psi.space(), "EvolutionSchedule::evolve");
    Eigen::VectorXcd v = psi.amplitudes();
    evolve_in_place(v, ta, tb);
    return StateVector(psi.space(), std::move(v));
}

Eigen::MatrixXcd EvolutionSchedule::propagator_matrix(double ta, double tb) const {
    const Eigen::Index d = space()->total_dim();
    if (d > Operator::kDenseLimit)
        throw std::runtime_error("EvolutionSchedule::propagator_matrix: beyond dense limit");
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
    double t = ta;
    while (tb - t > 1e-12) {
        const Segment& seg = segments_[segment_index_at(t)];
        double te = std::min(seg.t_end(), tb);
        u = seg.propagator(t, te).materialize() * u;
        t = te;
    }
    return u;
}

} // namespace qhist
