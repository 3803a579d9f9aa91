#include "shiftree/induced.hpp"

#include "shiftree/error.hpp"

namespace shiftree {

ConfigOracle induced_config(const GroupPtr& model, const ConfigOracle& sigma)
{
    if (!model->same_group(sigma.group()))
        throw GroupMismatch("configuration over " + sigma.group().name() + " pulled back along "
                            + model->name());
    auto free = GroupModel::free(model->generator_count());
    CustomRule rule{[free, model, sigma](const CanonicalElement& w) {
        return sigma(model->normal_form(free->word_of(w)));
    }};
    return ConfigOracle(free, sigma.alphabet_ptr(), std::move(rule));
}

} // namespace shiftree
