import os

from decouple import strtobool
from django import forms

from botfilter.threshold import BOT_GROUPS
from ingest.archive import ON_MALFORMED_CHOICES

FILE_FIELDS = ('keywords_file', 'stopwords', 'conversions', 'lemmas', 'bot_scores', 'gazetteer')


class PipelineConfigForm(forms.Form):
    input = forms.CharField(max_length=500)
    language = forms.CharField(max_length=8)
    keywords = forms.CharField(required=False)
    keywords_file = forms.CharField(required=False)
    stopwords = forms.CharField(required=False)
    conversions = forms.CharField(required=False)
    lemmas = forms.CharField(required=False)
    top_n = forms.IntegerField(min_value=1)
    min_terms = forms.IntegerField(min_value=0)
    top_users = forms.IntegerField(min_value=1, required=False)
    bot_scores = forms.CharField(required=False)
    bot_k = forms.IntegerField(min_value=1)
    bot_dedup = forms.CharField(required=False)
    k = forms.IntegerField(min_value=1)
    loading_threshold = forms.FloatField(min_value=0)
    top_docs = forms.IntegerField(min_value=1)
    gazetteer = forms.CharField(required=False)
    geo_top_n = forms.IntegerField(min_value=1)
    output_dir = forms.CharField(max_length=500)
    on_malformed = forms.ChoiceField(choices=[(c, c) for c in ON_MALFORMED_CHOICES])
    label_prefix = forms.CharField(max_length=4, required=False)
    varimax_tol = forms.FloatField()
    varimax_max_iter = forms.IntegerField(min_value=1)

    def __init__(self, *args, strict_bot_groups=True, **kwargs):
        super().__init__(*args, **kwargs)
        self.strict_bot_groups = strict_bot_groups

    def clean_language(self):
        return self.cleaned_data['language'].strip().lower()

    def clean_keywords(self):
        # '#' é literal (hashtags).
        raw = self.cleaned_data.get('keywords') or ''
        return tuple(k.strip() for k in raw.split(',') if k.strip())

    def clean_bot_dedup(self):
        value = self.cleaned_data.get('bot_dedup') or 'false'
        try:
            return strtobool(value)
        except ValueError:
            raise forms.ValidationError(f'Valor booleano inválido: {value}')

    def clean_varimax_tol(self):
        tol = self.cleaned_data['varimax_tol']
        if tol <= 0:
            raise forms.ValidationError('A tolerância do varimax deve ser positiva.')
        return tol

    def clean(self):
        cleaned_data = super().clean()
        source = cleaned_data.get('input')
        if source and not os.path.isfile(source):
            self.add_error('input', f'Ficheiro de entrada inexistente: {source}')
        for name in FILE_FIELDS:
            path = cleaned_data.get(name)
            if path and not os.path.isfile(path):
                self.add_error(name, f'Ficheiro inexistente: {path}')
            elif not path:
                cleaned_data[name] = None

        if self.strict_bot_groups and cleaned_data.get('bot_k') not in (None, BOT_GROUPS):
            self.add_error('bot_k', f'O limiar de bots é derivado de {BOT_GROUPS} grupos.')
        return cleaned_data
