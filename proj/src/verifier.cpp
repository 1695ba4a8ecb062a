#include "knotcert/verifier.hpp"

#include "knotcert/digest.hpp"

namespace knotcert {

std::string verdict_reason_string(const Verdict& v) {
    switch (v.reason) {
        case VerdictReason::OK:
            return "OK";
        case VerdictReason::NotPrime:
            return "NotPrime";
        case VerdictReason::DigestMismatch:
            return "DigestMismatch";
        case VerdictReason::BadDeterminant:
            return "BadDeterminant";
        case VerdictReason::RelationViolated:
            return "RelationViolated(" +
                   (v.relator_index ? std::to_string(*v.relator_index) : std::string("?")) + ")";
        case VerdictReason::CommutativeImage:
            return "CommutativeImage";
        case VerdictReason::MalformedCertificate:
            return "MalformedCertificate";
        case VerdictReason::OutOfSupportedRange:
            return "OutOfSupportedRange";
    }
    return "?";
}

RelationCheck check_relations(const GroupPresentation& pres, const std::vector<Mat2>& images) {
    if (images.size() != pres.generators.size())
        throw ArityMismatch("check_relations: " + std::to_string(images.size()) + " images for " +
                            std::to_string(pres.generators.size()) + " generators");
    for (std::size_t i = 0; i < pres.relators.size(); ++i) {
        if (pres.relators[i].empty()) continue;
        if (!(eval_word(pres.relators[i], images) == Mat2::identity(images[0].modulus())))
            return RelationCheck{false, i};
    }
    return RelationCheck{true, std::nullopt};
}

bool check_noncommutative(const GroupPresentation& pres, const std::vector<Mat2>& images) {
    if (images.empty()) return false;
    if (pres.kind == PresentationKind::wirtinger) {
        for (std::size_t i = 1; i < images.size(); ++i)
            if (!(images[i] == images[0])) return true;
        return false;
    }
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
            if (!mat2_commute(images[i], images[j])) return true;
    return false;
}

namespace {

Verdict reject(VerdictReason reason, const std::string& detail,
               std::optional<std::size_t> relator = std::nullopt) {
    Verdict v;
    v.accepted = false;
    v.reason = reason;
    v.relator_index = relator;
    v.detail = detail;
    return v;
}

}  // namespace

Verdict verify(const Certificate& cert, const KnotDiagram& d) {
    if (cert.version != 1)
        return reject(VerdictReason::MalformedCertificate,
                      "unsupported certificate version " + std::to_string(cert.version));

    if (cert.prime >= kModulusCap)
        return reject(VerdictReason::OutOfSupportedRange, "prime exceeds the 2^62 modulus cap");

    // Binding: the digest must match the canonical bytes of the diagram the
    // verifier was handed; group data is recomputed, never read from the
    // certificate.
    const std::string canon = canonical_bytes(d);
    if (sha256_hex(canon) != cert.digest)
        return reject(VerdictReason::DigestMismatch, "digest does not match this diagram");

    GroupPresentation pres = wirtinger(d);
    if (cert.generator_names != pres.generators)
        return reject(VerdictReason::MalformedCertificate,
                      "generator names do not match the Wirtinger presentation");
    if (cert.matrices.size() != pres.generators.size())
        return reject(VerdictReason::MalformedCertificate,
                      "matrix count does not match generator count");

    if (cert.prime < 2 || !is_prime(cert.prime))
        return reject(VerdictReason::NotPrime, std::to_string(cert.prime) + " is not prime");
    const std::uint64_t p = cert.prime;

    std::vector<Mat2> images;
    images.reserve(cert.matrices.size());
    for (std::size_t i = 0; i < cert.matrices.size(); ++i) {
        const auto& m = cert.matrices[i];
        for (std::int64_t e : m)
            if (e < 0 || static_cast<std::uint64_t>(e) >= p)
                return reject(VerdictReason::MalformedCertificate,
                              "matrix " + std::to_string(i) + " has an entry outside [0,p)");
        std::uint64_t m11 = static_cast<std::uint64_t>(m[0]), m12 = static_cast<std::uint64_t>(m[1]);
        std::uint64_t m21 = static_cast<std::uint64_t>(m[2]), m22 = static_cast<std::uint64_t>(m[3]);
        std::uint64_t det = sub_mod(mul_mod(m11, m22, p), mul_mod(m12, m21, p), p);
        if (det != 1 % p)
            return reject(VerdictReason::BadDeterminant,
                          "matrix " + std::to_string(i) + " has determinant != 1");
        images.push_back(Mat2::make(m11, m12, m21, m22, p, false));
    }

    RelationCheck rc = check_relations(pres, images);
    if (!rc.ok)
        return reject(VerdictReason::RelationViolated,
                      "relator " + std::to_string(*rc.first_failing) + " does not hold",
                      rc.first_failing);

    if (!check_noncommutative(pres, images))
        return reject(VerdictReason::CommutativeImage, "generator images all coincide");

    Verdict v;
    v.accepted = true;
    v.reason = VerdictReason::OK;
    return v;
}

Verdict verify_bytes(const std::string& certificate_json, const KnotDiagram& d) {
    Certificate cert;
    try {
        cert = certificate_from_json(certificate_json);
    } catch (const MalformedCertificateError& e) {
        return reject(VerdictReason::MalformedCertificate, e.what());
    }
    return verify(cert, d);
}

}  // namespace knotcert
