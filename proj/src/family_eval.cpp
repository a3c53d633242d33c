#include "blaine/errors.hpp"
#include "blaine/families.hpp"
#include "blaine/ode.hpp"
#include "blaine/qc.hpp"

namespace blaine {

Evaluation evaluate(const FamilyInstance& inst, cplx z, double tol) {
    inst.validate();
    const FamilyParams& p = inst.params;
    Evaluation out;
    switch (inst.tag) {
        case FamilyTag::Fm: out.value = eval_Fm(p.m, z, tol, &out.err); break;
        case FamilyTag::Gm: out.value = eval_Gm(p.m, z, tol, &out.err); break;
        case FamilyTag::f2: out.value = eval_f2(p.m, z, tol, &out.err); break;
        case FamilyTag::F0: out.value = eval_F0(inst, z, tol, &out.err); break;
        case FamilyTag::Va: out.value = v_a(p.a, z); break;
        case FamilyTag::Ta: out.value = modified_tangent_T(p.a, z); break;
        case FamilyTag::ElementaryE: out.value = elementary_family(p.p).E(z); break;
        case FamilyTag::ElementaryA: out.value = elementary_family(p.p).A(z); break;
        case FamilyTag::SinCos: out.value = std::sin(z) * std::cos(z); break;
        case FamilyTag::TanRatio: out.value = tan_taylor(z).c[0]; break;
        case FamilyTag::Theorem4F:
            out.value = theorem4_family(p.mobius, p.a1, p.b1, p.a2, p.b2).value(z);
            break;
        case FamilyTag::Custom: out.value = inst.custom(z); break;
    }
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
        throw Overflow("value of " + to_string(inst.tag) + " is not finite");
    return out;
}

}  // namespace blaine
