"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from ._forms import Alphabet, Form, FormalLanguage, make_form, footprint, concat, tokenize, form_to_json, \
    form_from_json

__all__ = ['Alphabet', 'Form', 'FormalLanguage', 'make_form', 'footprint', 'concat', 'tokenize', 'form_to_json',
           'form_from_json']
