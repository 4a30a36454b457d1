from .module import (ModMorphism, PointedModule, SubModule, collapse, congruence_closure,
                     free_cyclic, morphism_from_names, pointed_set, quotient, require_module,
                     require_morphism, submodule, validate_module, validate_morphism,
                     zero_module, zero_morphism)
from .limits import (CofiberProduct, Cone, Coproduct, Diagram, FiberProduct, Product,
                     add_morphisms, canonical_coim_im, coimage, cofiber_product, cokernel,
                     coproduct, direct_limit, fiber_product, image, inverse_limit, is_epi,
                     is_iso, is_mono, is_strong, kernel, product, strong_factorization,
                     strong_witness)
from .search import (congruences, cyclic_modules, extend, first_hom, homs, is_isomorphic, lift,
                     search_homs)
from .injective import (Embedding, MapModule, ProjectiveCover, embed_economical, embed_hull, RetractEmbedding,
                        hom_map_adjunction, injective_embed, injectivity_witness,
                        is_injective_object, map_module, projective_cover, psi, psi_inverse)
from .elements import (GeneralizedElement, atoms, exact_by_elements, exact_by_sets,
                       exact_categorically, generalized_elements)
